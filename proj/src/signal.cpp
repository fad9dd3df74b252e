#include "gaitpair/signal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace gaitpair {

namespace {

// Steady-state DF2T state for a constant unit input; scaled by the first
// sample this removes the start-up transient.
std::pair<double, double> biquad_zi(const Biquad& f) {
  double denom = 1.0 + f.a1 + f.a2;
  double g = std::abs(denom) > 1e-300 ? (f.b0 + f.b1 + f.b2) / denom : 0.0;
  double s2 = f.b2 - f.a2 * g;
  double s1 = f.b1 - f.a1 * g + s2;
  return {s1, s2};
}

std::vector<double> filter_pass(const Biquad& f, const std::vector<double>& x,
                                double x0) {
  auto [zi1, zi2] = biquad_zi(f);
  double s1 = zi1 * x0, s2 = zi2 * x0;
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = x[i];
    double out = f.b0 * v + s1;
    s1 = f.b1 * v - f.a1 * out + s2;
    s2 = f.b2 * v - f.a2 * out;
    y[i] = out;
  }
  return y;
}

AccelSeries apply_per_axis(
    const AccelSeries& series,
    const std::function<std::vector<double>(const std::vector<double>&)>& fn) {
  AccelSeries out = series;
  std::vector<double> fx = fn(series.axis_x());
  std::vector<double> fy = fn(series.axis_y());
  std::vector<double> fz = fn(series.axis_z());
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i].x = fx[i];
    out.samples[i].y = fy[i];
    out.samples[i].z = fz[i];
  }
  return out;
}

AccelSeries rotate_series(const AccelSeries& series,
                          const Eigen::Matrix3d& rot) {
  AccelSeries out = series;
  for (auto& s : out.samples) {
    Eigen::Vector3d v = rot * Eigen::Vector3d(s.x, s.y, s.z);
    s.x = v.x();
    s.y = v.y();
    s.z = v.z();
  }
  return out;
}

double population_sd(const std::vector<double>& v, double mean) {
  double acc = 0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

Biquad butter2_lowpass(double cutoff_hz, double rate_hz) {
  if (!(cutoff_hz > 0) || !(cutoff_hz < rate_hz / 2))
    throw std::invalid_argument("lowpass cutoff out of range");
  double k = std::tan(M_PI * cutoff_hz / rate_hz);
  double norm = 1.0 / (1.0 + std::sqrt(2.0) * k + k * k);
  Biquad f;
  f.b0 = k * k * norm;
  f.b1 = 2.0 * f.b0;
  f.b2 = f.b0;
  f.a1 = 2.0 * (k * k - 1.0) * norm;
  f.a2 = (1.0 - std::sqrt(2.0) * k + k * k) * norm;
  return f;
}

Biquad butter2_highpass(double cutoff_hz, double rate_hz) {
  if (!(cutoff_hz > 0) || !(cutoff_hz < rate_hz / 2))
    throw std::invalid_argument("highpass cutoff out of range");
  double k = std::tan(M_PI * cutoff_hz / rate_hz);
  double norm = 1.0 / (1.0 + std::sqrt(2.0) * k + k * k);
  Biquad f;
  f.b0 = norm;
  f.b1 = -2.0 * norm;
  f.b2 = norm;
  f.a1 = 2.0 * (k * k - 1.0) * norm;
  f.a2 = (1.0 - std::sqrt(2.0) * k + k * k) * norm;
  return f;
}

std::vector<double> filtfilt(const Biquad& f, const std::vector<double>& x) {
  if (x.empty()) return {};
  if (x.size() == 1) {
    double denom = 1.0 + f.a1 + f.a2;
    double g = std::abs(denom) > 1e-300 ? (f.b0 + f.b1 + f.b2) / denom : 0.0;
    return {x[0] * g * g};
  }
  const std::size_t n = x.size();
  const std::size_t pad = std::min<std::size_t>(n - 1, 100);

  // Odd reflection about both endpoints.
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i)
    ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  std::vector<double> fwd = filter_pass(f, ext, ext.front());
  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> bwd = filter_pass(f, fwd, fwd.front());
  std::reverse(bwd.begin(), bwd.end());

  return std::vector<double>(bwd.begin() + static_cast<std::ptrdiff_t>(pad),
                             bwd.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

AccelSeries gravity_align(const AccelSeries& series) {
  series.validate();
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& s : series.samples) mean += Eigen::Vector3d(s.x, s.y, s.z);
  mean /= static_cast<double>(series.samples.size());
  if (mean.norm() < 1e-9)
    throw std::invalid_argument(
        "gravity_align: zero mean acceleration (free fall)");
  Eigen::Quaterniond q =
      Eigen::Quaterniond::FromTwoVectors(mean, Eigen::Vector3d::UnitZ());
  return rotate_series(series, q.toRotationMatrix());
}

AccelSeries bandpass(const AccelSeries& series, double lo_hz, double hi_hz) {
  series.validate();
  if (!(lo_hz > 0) || !(lo_hz < hi_hz) || !(hi_hz < series.rate_hz / 2))
    throw std::invalid_argument("invalid band");
  Biquad hp = butter2_highpass(lo_hz, series.rate_hz);
  Biquad lp = butter2_lowpass(hi_hz, series.rate_hz);
  return apply_per_axis(series, [&](const std::vector<double>& v) {
    return filtfilt(lp, filtfilt(hp, v));
  });
}

AccelSeries lowpass(const AccelSeries& series, double cutoff_hz) {
  series.validate();
  Biquad lp = butter2_lowpass(cutoff_hz, series.rate_hz);
  return apply_per_axis(series,
                        [&](const std::vector<double>& v) { return filtfilt(lp, v); });
}

HeelStrikes detect_heel_strikes(const AccelSeries& series) {
  series.validate();
  if (series.duration() < 2.0)
    throw std::invalid_argument("detect_heel_strikes: series too short");
  Biquad lp = butter2_lowpass(kStrikeLowpassHz, series.rate_hz);
  std::vector<double> z = filtfilt(lp, series.axis_z());
  double mean = std::accumulate(z.begin(), z.end(), 0.0) /
                static_cast<double>(z.size());
  double sd = population_sd(z, mean);
  double thr = mean + kStrikeThresholdSd * sd;
  const std::size_t min_sep = static_cast<std::size_t>(
      std::lround(kStrikeRefractorySec * series.rate_hz));

  std::vector<std::size_t> accepted;
  for (std::size_t i = 1; i + 1 < z.size(); ++i) {
    if (!(z[i] > thr)) continue;
    if (!(z[i] > z[i - 1] && z[i] >= z[i + 1])) continue;
    if (!accepted.empty() && i - accepted.back() < min_sep) {
      if (z[i] > z[accepted.back()]) accepted.back() = i;  // keep the taller
      continue;
    }
    accepted.push_back(i);
  }
  if (accepted.size() < 2)
    throw std::runtime_error("insufficient gait: fewer than 2 heel strikes");

  HeelStrikes strikes;
  strikes.indices = accepted;
  strikes.times_s.reserve(accepted.size());
  for (std::size_t idx : accepted)
    strikes.times_s.push_back(series.samples[idx].t);
  strikes.kind.assign(accepted.size(), Foot::unknown);
  for (std::size_t i = 2; i < strikes.kind.size(); ++i)
    strikes.kind[i] = (i % 2 == 0) ? Foot::left : Foot::right;
  return strikes;
}

std::vector<GaitCycle> segment_cycles(const AccelSeries& series,
                                      const HeelStrikes& strikes) {
  if (strikes.size() < 2)
    throw std::invalid_argument("segment_cycles: need at least 2 strikes");
  std::vector<GaitCycle> cycles;
  cycles.reserve(strikes.size() - 1);
  const auto& samples = series.samples;
  for (std::size_t s = 0; s + 1 < strikes.size(); ++s) {
    std::size_t i0 = strikes.indices[s];
    std::size_t i1 = strikes.indices[s + 1];
    if (i1 >= samples.size())
      throw std::invalid_argument("segment_cycles: strike index out of range");
    GaitCycle cycle;
    cycle.start_t = samples[i0].t;
    cycle.end_t = samples[i1].t;
    cycle.values.resize(kCycleSamples);
    std::size_t cursor = i0;
    for (std::size_t j = 0; j < kCycleSamples; ++j) {
      double tau = cycle.start_t + (cycle.end_t - cycle.start_t) *
                                       static_cast<double>(j) /
                                       static_cast<double>(kCycleSamples - 1);
      while (cursor + 1 < i1 && samples[cursor + 1].t <= tau) ++cursor;
      const auto& lo = samples[cursor];
      const auto& hi = samples[cursor + 1];
      double w = (tau - lo.t) / (hi.t - lo.t);
      w = std::clamp(w, 0.0, 1.0);
      cycle.values[j] = lo.z + w * (hi.z - lo.z);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

MeanGait mean_gait(const std::vector<GaitCycle>& cycles) {
  if (cycles.empty()) throw std::invalid_argument("mean_gait: no cycles");
  MeanGait mean;
  mean.values.assign(kCycleSamples, 0.0);
  for (const auto& c : cycles) {
    if (c.values.size() != kCycleSamples)
      throw std::invalid_argument("mean_gait: cycle has wrong length");
    for (std::size_t j = 0; j < kCycleSamples; ++j) mean.values[j] += c.values[j];
  }
  for (auto& v : mean.values) v /= static_cast<double>(cycles.size());
  mean.n_cycles = cycles.size();
  return mean;
}

AccelSeries body_frame(const AccelSeries& series) {
  AccelSeries aligned = gravity_align(series);
  const std::size_t n = aligned.samples.size();
  double mx = 0, my = 0;
  for (const auto& s : aligned.samples) {
    mx += s.x;
    my += s.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double cxx = 0, cyy = 0, cxy = 0;
  for (const auto& s : aligned.samples) {
    double dx = s.x - mx, dy = s.y - my;
    cxx += dx * dx;
    cyy += dy * dy;
    cxy += dx * dy;
  }
  cxx /= static_cast<double>(n);
  cyy /= static_cast<double>(n);
  cxy /= static_cast<double>(n);
  if (cxx + cyy < 1e-12)
    throw std::invalid_argument("body_frame: degenerate horizontal variance");

  // Principal axis angle w.r.t. x; rotate it onto +y.
  double theta = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
  double yaw = M_PI / 2.0 - theta;
  Eigen::Matrix3d rot;
  rot << std::cos(yaw), -std::sin(yaw), 0,
         std::sin(yaw),  std::cos(yaw), 0,
         0, 0, 1;
  AccelSeries out = rotate_series(aligned, rot);

  // Fix the sign so the first dominant horizontal peak is positive.
  double max_abs = 0;
  for (const auto& s : out.samples) max_abs = std::max(max_abs, std::abs(s.y));
  if (max_abs > 0) {
    for (const auto& s : out.samples) {
      if (std::abs(s.y) >= 0.95 * max_abs) {
        if (s.y < 0) {
          for (auto& r : out.samples) {
            r.x = -r.x;
            r.y = -r.y;
          }
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace gaitpair
