#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gaitpair/accel.hpp"

namespace gaitpair {

// Reads a t,x,y,z CSV ('.' decimal separator). A header row is detected by a
// non-numeric first field and skipped. Rows are numbered from 1 (data rows
// only) in error messages. Throws std::runtime_error on I/O failure,
// malformed rows, non-monotone timestamps or empty input.
AccelSeries load_csv(const std::filesystem::path& path, double rate_hz,
                     const std::string& subject_id, Location location);

// Writes t,x,y,z with a header row, round-trip exact (shortest exact decimal
// representation per value).
void save_csv(const AccelSeries& series, const std::filesystem::path& path);

// Synthetic gait generator. The z-axis is gravity plus a sum of harmonics of
// the gait frequency; x and y carry scaled, phase-shifted copies so that the
// body-frame pipeline has horizontal structure to work with. The first
// harmonic peaks at each cycle start, which is what the heel-strike detector
// anchors on.
struct SynthSpec {
  double cycle_period_s = 1.0;
  std::size_t n_cycles = 12;
  double rate_hz = 50.0;
  // Amplitude (m/s^2) of harmonic k+1 of the gait frequency.
  std::vector<double> harmonics = {2.0, 0.8, 0.3};
  // Per-cycle period jitter. Stationary: marginal sd equals jitter_sd_s.
  double jitter_sd_s = 0.0;
  // Per-cycle phase wobble (radians) of harmonics >= 2. This is what makes
  // instantaneous cycles differ from the mean gait in a structured way.
  double phase_jitter_sd = 0.0;
  // Per-cycle relative amplitude wobble (fraction).
  double amp_jitter_frac = 0.0;
  // Additive white measurement noise per axis (m/s^2).
  double noise_sd = 0.0;
  // Heel-strike impact transient: a brief raised-cosine spike centered on
  // each cycle start (vertical, with a smaller horizontal braking
  // component). Zero disables it.
  double impact_amp = 0.0;       // m/s^2 at the spike peak
  double impact_width_s = 0.08;  // full width of the spike
  double lateral_scale = 0.25;  // x amplitude relative to z
  double forward_scale = 0.6;   // y amplitude relative to z
  // Draw base phases of harmonics >= 2 from the seed (used to make subjects
  // differ in waveform shape, not only in timing).
  bool randomize_base_phases = false;
  std::uint64_t seed = 0;
  std::string subject_id = "synth";
  Location location = Location::waist;
};

struct SynthGait {
  AccelSeries series;
  std::vector<double> periods;       // realized per-cycle periods (s)
  std::vector<double> cycle_starts;  // start time of each cycle (s)
};

SynthGait synth_gait(const SynthSpec& spec);

// Convenience form with the remaining knobs at their defaults.
AccelSeries synth_gait(double cycle_period_s, std::size_t n_cycles,
                       double rate_hz, const std::vector<double>& harmonics,
                       double jitter_sd_s, std::uint64_t seed);

// Adds per-sample noise drawn from the model (level scaling applied) to all
// three axes independently. Timestamps unchanged; pure given (inputs, seed).
AccelSeries add_noise(const AccelSeries& series, const NoiseModel& model,
                      std::uint64_t seed);

// Stationary inter-pulse-interval process with marginal N(mean, sd^2).
// Consecutive intervals are AR(1)-correlated with occasional resets, which
// reproduces the chunk-repetition statistics observed on real gait: walking
// pace drifts slowly with sporadic disturbances.
inline constexpr double kIpiAr1Rho = 0.99;
inline constexpr double kIpiResetProb = 0.2;

std::vector<double> synth_ipi_ms(double mean_ms, double sd_ms, std::size_t n,
                                 std::uint64_t seed);

// Builds a strike sequence from explicit inter-pulse intervals. Indices are
// millisecond ticks; times carry the exact values.
HeelStrikes strikes_from_ipis(const std::vector<double>& ipi_ms,
                              double start_s = 0.0);

// Synthetic multi-subject, multi-location corpus. Each subject has one
// latent gait (own period, waveform phases and per-cycle jitter); each
// location sees it amplitude-scaled per a body profile plus independent
// sensor noise. Recordings share timestamps, mimicking synchronized devices.
struct CorpusSpec {
  std::size_t n_subjects = 2;
  std::vector<Location> locations = {Location::waist, Location::shin};
  std::size_t n_cycles = 40;
  double rate_hz = 50.0;
  double base_period_s = 1.0;
  double period_spread = 0.12;  // subject period multiplier ~ U(1-s, 1+s)
  std::vector<double> harmonics = {2.0, 0.8, 0.3};
  double jitter_sd_s = 0.02;
  double phase_jitter_sd = 0.3;
  double amp_jitter_frac = 0.08;
  double location_noise_sd = 0.3;   // per-location sensor noise (m/s^2)
  bool vary_location_scale = true;  // apply the per-location amplitude profile
  std::uint64_t seed = 0;
};

double location_amplitude_scale(Location loc);

std::vector<AccelSeries> make_corpus(const CorpusSpec& spec);

}  // namespace gaitpair
