#include "gaitpair/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gaitpair/rng.hpp"

namespace gaitpair {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& field, double& out) {
  std::string f = trim(field);
  if (f.empty()) return false;
  const char* begin = f.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + f.size() && std::isfinite(out);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

void format_double(std::string& buf, double v) {
  char tmp[32];
  auto res = std::to_chars(tmp, tmp + sizeof tmp, v);
  buf.append(tmp, res.ptr);
}

// Stationary AR(1) with occasional resets; marginal N(0, sd^2). See the
// kIpiAr1Rho / kIpiResetProb notes in the header.
std::vector<double> correlated_jitter(std::size_t n, double sd, Rng& rng) {
  std::vector<double> w(n, 0.0);
  if (n == 0 || sd <= 0) return w;
  const double rho = kIpiAr1Rho;
  const double innov = sd * std::sqrt(1.0 - rho * rho);
  w[0] = rng.normal(0, sd);
  for (std::size_t i = 1; i < n; ++i) {
    if (rng.uniform01() < kIpiResetProb) {
      w[i] = rng.normal(0, sd);
    } else {
      w[i] = rho * w[i - 1] + rng.normal(0, innov);
    }
  }
  return w;
}

}  // namespace

AccelSeries load_csv(const std::filesystem::path& path, double rate_hz,
                     const std::string& subject_id, Location location) {
  if (!(rate_hz > 0)) throw std::runtime_error("rate_hz must be positive");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  AccelSeries series;
  series.rate_hz = rate_hz;
  series.subject_id = subject_id;
  series.location = location;

  std::string line;
  std::size_t row = 0;  // data rows, 1-based
  bool first_line = true;
  double prev_t = -std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    auto fields = split_csv(stripped);
    if (first_line) {
      first_line = false;
      double probe;
      if (!fields.empty() && !parse_double(fields[0], probe)) continue;  // header
    }
    ++row;
    if (fields.size() != 4)
      throw std::runtime_error("malformed row " + std::to_string(row) + " in " +
                               path.string() + ": expected t,x,y,z");
    AccelSample s;
    if (!parse_double(fields[0], s.t) || !parse_double(fields[1], s.x) ||
        !parse_double(fields[2], s.y) || !parse_double(fields[3], s.z))
      throw std::runtime_error("malformed row " + std::to_string(row) + " in " +
                               path.string());
    if (!(s.t > prev_t))
      throw std::runtime_error("non-monotone timestamp at row " +
                               std::to_string(row));
    prev_t = s.t;
    series.samples.push_back(s);
  }
  if (series.samples.empty())
    throw std::runtime_error("empty file: " + path.string());
  return series;
}

void save_csv(const AccelSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t,x,y,z\n";
  std::string buf;
  for (const auto& s : series.samples) {
    buf.clear();
    format_double(buf, s.t);
    buf.push_back(',');
    format_double(buf, s.x);
    buf.push_back(',');
    format_double(buf, s.y);
    buf.push_back(',');
    format_double(buf, s.z);
    buf.push_back('\n');
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SynthGait synth_gait(const SynthSpec& spec) {
  if (!(spec.cycle_period_s > 0))
    throw std::invalid_argument("cycle_period_s must be positive");
  if (spec.n_cycles < 1) throw std::invalid_argument("n_cycles must be >= 1");
  if (!(spec.rate_hz >= 2.0 / spec.cycle_period_s))
    throw std::invalid_argument("rate_hz too low for the cycle period");
  if (spec.jitter_sd_s < 0 || spec.phase_jitter_sd < 0 ||
      spec.amp_jitter_frac < 0 || spec.noise_sd < 0)
    throw std::invalid_argument("jitter parameters must be non-negative");

  Rng period_rng(derive_seed(spec.seed, "synth-period"));
  Rng cycle_rng(derive_seed(spec.seed, "synth-cycle"));
  Rng noise_rng(derive_seed(spec.seed, "synth-noise"));
  Rng phase_rng(derive_seed(spec.seed, "synth-base-phase"));

  const std::size_t n_harm = spec.harmonics.size();
  std::vector<double> base_phase(n_harm, 0.0);
  if (spec.randomize_base_phases) {
    // Harmonic 1 keeps phase 0 so the dominant peak stays anchored at the
    // cycle start.
    for (std::size_t k = 1; k < n_harm; ++k)
      base_phase[k] = phase_rng.uniform(0, 2.0 * M_PI);
  }

  SynthGait out;
  out.periods = correlated_jitter(spec.n_cycles, spec.jitter_sd_s, period_rng);
  out.cycle_starts.resize(spec.n_cycles);
  double t_cursor = 0;
  for (std::size_t c = 0; c < spec.n_cycles; ++c) {
    double p = spec.cycle_period_s + out.periods[c];
    p = std::clamp(p, 0.3 * spec.cycle_period_s, 1.7 * spec.cycle_period_s);
    out.periods[c] = p;
    out.cycle_starts[c] = t_cursor;
    t_cursor += p;
  }
  const double t_end = t_cursor;

  std::vector<double> theta(spec.n_cycles, 0.0), amp(spec.n_cycles, 0.0);
  for (std::size_t c = 0; c < spec.n_cycles; ++c) {
    theta[c] = spec.phase_jitter_sd > 0
                   ? cycle_rng.normal(0, spec.phase_jitter_sd)
                   : 0.0;
    amp[c] = spec.amp_jitter_frac > 0
                 ? cycle_rng.normal(0, spec.amp_jitter_frac)
                 : 0.0;
  }

  AccelSeries& series = out.series;
  series.rate_hz = spec.rate_hz;
  series.subject_id = spec.subject_id;
  series.location = spec.location;

  const double dt = 1.0 / spec.rate_hz;
  std::size_t cycle = 0;
  for (std::size_t i = 0;; ++i) {
    double t = static_cast<double>(i) * dt;
    if (t >= t_end) break;
    while (cycle + 1 < spec.n_cycles && t >= out.cycle_starts[cycle + 1])
      ++cycle;
    double phi = (t - out.cycle_starts[cycle]) / out.periods[cycle];
    double gain = 1.0 + amp[cycle];
    double z = 0, y = 0, x = 0;
    for (std::size_t k = 0; k < n_harm; ++k) {
      double ph = 2.0 * M_PI * static_cast<double>(k + 1) * phi +
                  base_phase[k] + (k >= 1 ? theta[cycle] : 0.0);
      double a = spec.harmonics[k] * gain;
      z += a * std::cos(ph);
      y += spec.forward_scale * a * std::sin(ph);
      x += spec.lateral_scale * a * std::sin(ph + 2.1);
    }
    if (spec.impact_amp > 0 && spec.impact_width_s > 0) {
      double d_start = t - out.cycle_starts[cycle];
      double d_next = (out.cycle_starts[cycle] + out.periods[cycle]) - t;
      double d = std::min(d_start, d_next);
      if (d <= spec.impact_width_s / 2) {
        double c = std::cos(M_PI * d / spec.impact_width_s);
        double bump = spec.impact_amp * gain * c * c;
        z += bump;
        y += 0.4 * bump;
      }
    }
    AccelSample s;
    s.t = t;
    s.x = x;
    s.y = y;
    s.z = kGravity + z;
    if (spec.noise_sd > 0) {
      s.x += noise_rng.normal(0, spec.noise_sd);
      s.y += noise_rng.normal(0, spec.noise_sd);
      s.z += noise_rng.normal(0, spec.noise_sd);
    }
    series.samples.push_back(s);
  }
  series.validate();
  return out;
}

AccelSeries synth_gait(double cycle_period_s, std::size_t n_cycles,
                       double rate_hz, const std::vector<double>& harmonics,
                       double jitter_sd_s, std::uint64_t seed) {
  SynthSpec spec;
  spec.cycle_period_s = cycle_period_s;
  spec.n_cycles = n_cycles;
  spec.rate_hz = rate_hz;
  spec.harmonics = harmonics;
  spec.jitter_sd_s = jitter_sd_s;
  spec.seed = seed;
  return synth_gait(spec).series;
}

AccelSeries add_noise(const AccelSeries& series, const NoiseModel& model,
                      std::uint64_t seed) {
  model.validate();
  series.validate();
  const double mu = model.scaled_mu();
  const double sigma = model.scaled_sigma();
  Rng rng(derive_seed(seed, "add-noise"));
  auto draw = [&]() {
    switch (model.family) {
      case NoiseFamily::gaussian: return rng.normal(mu, sigma);
      case NoiseFamily::laplacian: return rng.laplace(mu, sigma);
      case NoiseFamily::uniform: return rng.uniform_sd(mu, sigma);
    }
    return 0.0;
  };
  AccelSeries out = series;
  for (auto& s : out.samples) {
    s.x += draw();
    s.y += draw();
    s.z += draw();
  }
  return out;
}

std::vector<double> synth_ipi_ms(double mean_ms, double sd_ms, std::size_t n,
                                 std::uint64_t seed) {
  if (!(mean_ms > 0) || !(sd_ms >= 0))
    throw std::invalid_argument("invalid IPI parameters");
  Rng rng(derive_seed(seed, "synth-ipi"));
  std::vector<double> w = correlated_jitter(n, sd_ms, rng);
  std::vector<double> ipi(n);
  for (std::size_t i = 0; i < n; ++i)
    ipi[i] = std::max(1.0, mean_ms + w[i]);
  return ipi;
}

double location_amplitude_scale(Location loc) {
  switch (loc) {
    case Location::waist: return 1.0;
    case Location::shin: return 1.6;
    case Location::thigh: return 1.3;
    case Location::upper_arm: return 0.8;
    case Location::forearm: return 0.7;
    case Location::chest: return 0.9;
    case Location::head: return 0.55;
  }
  return 1.0;
}

std::vector<AccelSeries> make_corpus(const CorpusSpec& spec) {
  if (spec.n_subjects == 0 || spec.locations.empty())
    throw std::invalid_argument("make_corpus: empty corpus");
  std::vector<AccelSeries> corpus;
  corpus.reserve(spec.n_subjects * spec.locations.size());
  for (std::size_t s = 0; s < spec.n_subjects; ++s) {
    const std::uint64_t subj_seed = derive_seed(spec.seed, "subject", s);
    SynthSpec gait;
    gait.n_cycles = spec.n_cycles;
    gait.rate_hz = spec.rate_hz;
    gait.harmonics = spec.harmonics;
    gait.jitter_sd_s = spec.jitter_sd_s;
    gait.phase_jitter_sd = spec.phase_jitter_sd;
    gait.amp_jitter_frac = spec.amp_jitter_frac;
    gait.randomize_base_phases = true;
    gait.seed = subj_seed;
    gait.subject_id = "s" + std::to_string(s);
    double mult =
        1.0 + Rng(derive_seed(subj_seed, "period")).uniform(-spec.period_spread,
                                                            spec.period_spread);
    gait.cycle_period_s = spec.base_period_s * mult;
    AccelSeries latent = synth_gait(gait).series;

    for (std::size_t li = 0; li < spec.locations.size(); ++li) {
      Location loc = spec.locations[li];
      AccelSeries rec = latent;
      rec.location = loc;
      double scale =
          spec.vary_location_scale ? location_amplitude_scale(loc) : 1.0;
      if (scale != 1.0) {
        for (auto& smp : rec.samples) {
          smp.x *= scale;
          smp.y *= scale;
          smp.z = kGravity + scale * (smp.z - kGravity);
        }
      }
      if (spec.location_noise_sd > 0) {
        NoiseModel sensor;
        sensor.family = NoiseFamily::gaussian;
        sensor.mu = 0.0;
        sensor.sigma = spec.location_noise_sd;
        sensor.level = NoiseLevel::video;  // unit scale
        rec = add_noise(rec, sensor, derive_seed(subj_seed, "location", li));
      }
      corpus.push_back(std::move(rec));
    }
  }
  return corpus;
}

HeelStrikes strikes_from_ipis(const std::vector<double>& ipi_ms,
                              double start_s) {
  HeelStrikes strikes;
  double t = start_s;
  auto push = [&](double time) {
    strikes.times_s.push_back(time);
    strikes.indices.push_back(
        static_cast<std::size_t>(std::llround(time * 1000.0)));
  };
  push(t);
  for (double ipi : ipi_ms) {
    t += ipi / 1000.0;
    push(t);
  }
  strikes.kind.assign(strikes.indices.size(), Foot::unknown);
  for (std::size_t i = 2; i < strikes.kind.size(); ++i)
    strikes.kind[i] = (i % 2 == 0) ? Foot::left : Foot::right;
  return strikes;
}

}  // namespace gaitpair
