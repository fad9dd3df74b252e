#pragma once

#include <vector>

#include "gaitpair/accel.hpp"

namespace gaitpair {

// Heel-strike detector constants. The paper names only "local maxima"; the
// threshold and refractory period are fixed here so results are
// reproducible.
inline constexpr double kStrikeLowpassHz = 3.0;
inline constexpr double kStrikeThresholdSd = 0.5;
inline constexpr double kStrikeRefractorySec = 0.25;

// Second-order Butterworth biquad (Direct Form II transposed).
struct Biquad {
  double b0, b1, b2;  // numerator
  double a1, a2;      // denominator (a0 normalized to 1)
};

Biquad butter2_lowpass(double cutoff_hz, double rate_hz);
Biquad butter2_highpass(double cutoff_hz, double rate_hz);

// Forward-backward (zero phase) application with odd-reflection padding and
// steady-state initial conditions.
std::vector<double> filtfilt(const Biquad& f, const std::vector<double>& x);

// Rotates the series so the mean acceleration vector aligns with +z.
// Per-sample norms are preserved. Throws on a (near) zero mean vector.
AccelSeries gravity_align(const AccelSeries& series);

// Zero-phase band-pass, all axes, same length and timestamps.
// Requires 0 < lo_hz < hi_hz < rate_hz / 2.
AccelSeries bandpass(const AccelSeries& series, double lo_hz, double hi_hz);

// Zero-phase low-pass, all axes. Requires 0 < cutoff_hz < rate_hz / 2.
AccelSeries lowpass(const AccelSeries& series, double cutoff_hz);

// Local maxima of the 3 Hz low-passed z-axis above mean + 0.5 sd, with a
// 0.25 s refractory period. Foot labels start unknown until two strikes have
// been observed, then alternate. Throws "insufficient gait" when fewer than
// two strikes are found.
HeelStrikes detect_heel_strikes(const AccelSeries& series);

// One cycle per consecutive strike pair, z-axis linearly resampled to
// kCycleSamples values over the strike-to-strike time span.
std::vector<GaitCycle> segment_cycles(const AccelSeries& series,
                                      const HeelStrikes& strikes);

MeanGait mean_gait(const std::vector<GaitCycle>& cycles);

// gravity_align followed by a yaw rotation mapping the principal horizontal
// variance axis to +y, sign fixed so the first dominant horizontal peak is
// positive. Throws when horizontal variance is degenerate.
AccelSeries body_frame(const AccelSeries& series);

}  // namespace gaitpair
