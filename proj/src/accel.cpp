#include "gaitpair/accel.hpp"

#include <cmath>
#include <stdexcept>

namespace gaitpair {

std::string to_string(Location loc) {
  switch (loc) {
    case Location::waist: return "waist";
    case Location::shin: return "shin";
    case Location::thigh: return "thigh";
    case Location::upper_arm: return "upper-arm";
    case Location::forearm: return "forearm";
    case Location::chest: return "chest";
    case Location::head: return "head";
  }
  throw std::invalid_argument("unknown location");
}

Location location_from_string(const std::string& name) {
  for (Location loc : all_locations()) {
    if (to_string(loc) == name) return loc;
  }
  throw std::invalid_argument("unknown location: " + name);
}

const std::vector<Location>& all_locations() {
  static const std::vector<Location> locs = {
      Location::waist,   Location::shin,    Location::thigh,
      Location::upper_arm, Location::forearm, Location::chest,
      Location::head};
  return locs;
}

std::vector<double> AccelSeries::axis_x() const {
  std::vector<double> v(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) v[i] = samples[i].x;
  return v;
}

std::vector<double> AccelSeries::axis_y() const {
  std::vector<double> v(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) v[i] = samples[i].y;
  return v;
}

std::vector<double> AccelSeries::axis_z() const {
  std::vector<double> v(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) v[i] = samples[i].z;
  return v;
}

void AccelSeries::validate() const {
  if (samples.empty()) throw std::invalid_argument("series is empty");
  if (!(rate_hz > 0)) throw std::invalid_argument("rate_hz must be positive");
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y) ||
        !std::isfinite(s.z))
      throw std::invalid_argument("non-finite sample");
    if (!(s.t > prev))
      throw std::invalid_argument("timestamps not strictly increasing");
    prev = s.t;
  }
}

AccelSeries AccelSeries::slice_time(double t0, double t1) const {
  AccelSeries out;
  out.rate_hz = rate_hz;
  out.subject_id = subject_id;
  out.location = location;
  for (const auto& s : samples) {
    if (s.t >= t0 && s.t <= t1) out.samples.push_back(s);
  }
  return out;
}

std::string to_string(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::gaussian: return "gaussian";
    case NoiseFamily::laplacian: return "laplacian";
    case NoiseFamily::uniform: return "uniform";
  }
  throw std::invalid_argument("unknown noise family");
}

NoiseFamily noise_family_from_string(const std::string& name) {
  if (name == "gaussian") return NoiseFamily::gaussian;
  if (name == "laplacian") return NoiseFamily::laplacian;
  if (name == "uniform") return NoiseFamily::uniform;
  throw std::invalid_argument("unknown noise family: " + name);
}

std::string to_string(NoiseLevel l) {
  switch (l) {
    case NoiseLevel::low: return "low";
    case NoiseLevel::video: return "video";
    case NoiseLevel::high: return "high";
  }
  throw std::invalid_argument("unknown noise level");
}

NoiseLevel noise_level_from_string(const std::string& name) {
  if (name == "low") return NoiseLevel::low;
  if (name == "video") return NoiseLevel::video;
  if (name == "high") return NoiseLevel::high;
  throw std::invalid_argument("unknown noise level: " + name);
}

void NoiseModel::validate() const {
  if (!(sigma > 0)) throw std::invalid_argument("noise sigma must be positive");
  if (!std::isfinite(mu) || !std::isfinite(sigma))
    throw std::invalid_argument("noise parameters must be finite");
}

}  // namespace gaitpair
