#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gaitpair {

inline constexpr double kGravity = 9.81;  // m/s^2

struct AccelSample {
  double t = 0;  // seconds
  double x = 0;  // m/s^2
  double y = 0;
  double z = 0;
};

// Body locations of the 7-position walking dataset.
enum class Location {
  waist,
  shin,
  thigh,
  upper_arm,
  forearm,
  chest,
  head,
};

std::string to_string(Location loc);
Location location_from_string(const std::string& name);
const std::vector<Location>& all_locations();

struct AccelSeries {
  std::vector<AccelSample> samples;
  double rate_hz = 0;  // nominal sampling rate
  std::string subject_id;
  Location location = Location::waist;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double start_time() const { return samples.front().t; }
  double end_time() const { return samples.back().t; }
  double duration() const { return end_time() - start_time(); }

  std::vector<double> axis_x() const;
  std::vector<double> axis_y() const;
  std::vector<double> axis_z() const;

  // Throws std::invalid_argument when empty, timestamps are not strictly
  // increasing, values are non-finite, or rate_hz <= 0.
  void validate() const;

  // Sub-series restricted to samples with t in [t0, t1].
  AccelSeries slice_time(double t0, double t1) const;
};

enum class NoiseFamily { gaussian, laplacian, uniform };
enum class NoiseLevel { low, video, high };

std::string to_string(NoiseFamily f);
NoiseFamily noise_family_from_string(const std::string& name);
std::string to_string(NoiseLevel l);
NoiseLevel noise_level_from_string(const std::string& name);

// Disparity parameters fitted to video-estimated acceleration.
inline constexpr double kVideoNoiseMu = 2.0921;     // m/s^2
inline constexpr double kVideoNoiseSigma = 6.0210;  // m/s^2

// Additive per-sample noise model. The level scales (mu, sigma) by
// (1/2, 1/2) for low, (1, 1) for video and (2, 2) for high.
struct NoiseModel {
  NoiseFamily family = NoiseFamily::gaussian;
  double mu = kVideoNoiseMu;
  double sigma = kVideoNoiseSigma;
  NoiseLevel level = NoiseLevel::video;

  double level_scale() const {
    switch (level) {
      case NoiseLevel::low: return 0.5;
      case NoiseLevel::video: return 1.0;
      case NoiseLevel::high: return 2.0;
    }
    return 1.0;
  }
  double scaled_mu() const { return mu * level_scale(); }
  double scaled_sigma() const { return sigma * level_scale(); }

  void validate() const;  // sigma > 0
};

inline constexpr std::size_t kCycleSamples = 40;

// One gait cycle resampled to kCycleSamples values (z-axis after
// preprocessing).
struct GaitCycle {
  std::vector<double> values;  // exactly kCycleSamples
  double start_t = 0;
  double end_t = 0;
};

struct MeanGait {
  std::vector<double> values;  // exactly kCycleSamples
  std::size_t n_cycles = 0;
};

enum class Foot { left, right, unknown };

struct HeelStrikes {
  std::vector<std::size_t> indices;  // strictly increasing sample indices
  std::vector<double> times_s;      // strike times, parallel to indices
  std::vector<Foot> kind;           // parallel to indices

  std::size_t size() const { return indices.size(); }
};

}  // namespace gaitpair
