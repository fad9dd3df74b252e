#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gaitpair/accel.hpp"
#include "gaitpair/bits.hpp"
#include "gaitpair/hash.hpp"

namespace gaitpair {

enum class Scheme { saphe, walkie_talkie, gait_key, bandana, ipi };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

// ---------------------------------------------------------------------------
// Parameters

struct SapheParams {
  std::size_t n_thresholds = 64;
  double range_g = 1.0;  // half-range of threshold values, in g
  std::uint64_t seed = 0;
  bool dynamic_range = false;  // draw values over the observed signal range
};

struct WalkieTalkieParams {
  double alpha = 0.8;        // guard-band width in window standard deviations
  std::size_t window = 10;   // samples per non-overlapping window
  double epsilon = 0.1;      // reconciliation abort margin
  std::size_t pa_window = 30;  // privacy-amplification window, bits
  int levels = 2;            // 2 = Walkie-Talkie, 4 = Gait-Key
};

// Gait-Key: four-ary quantization, alpha 0.9, windows of 50.
WalkieTalkieParams gait_key_params();

enum class BandanaVariant { original, mapping, normalized };

std::string to_string(BandanaVariant v);

struct BandanaParams {
  std::size_t bits_per_cycle = 4;
  std::size_t n_cycles = 12;
  std::size_t fingerprint_bits = 32;
  std::size_t discard_bits = 16;
  BandanaVariant variant = BandanaVariant::original;
  // Per 4-bit pattern discard probability (normalized variant only).
  std::map<std::uint16_t, double> rejection_table;
  std::uint64_t rejection_seed = 0;

  void validate() const;  // bits_per_cycle * n_cycles == fingerprint + discard
};

struct IpiParams {
  unsigned m = 1;       // scaling divisor
  unsigned q = 4;       // modulus exponent
  unsigned k = 4;       // bits kept per interval (1..q)
  double f_s = 50.0;    // sampling rate, Hz

  void validate() const;
};

// ---------------------------------------------------------------------------
// Bit sequences and reconciliation metadata

struct SapheMeta {
  std::uint64_t seed = 0;
  std::size_t n_thresholds = 0;
};

// Retained entries per axis; an entry is one sample that survived the guard
// band, carrying 1 bit (levels 2) or a 2-bit symbol (levels 4).
struct WtAxisMeta {
  std::vector<std::uint32_t> indices;
  std::vector<std::uint8_t> symbols;  // parallel to indices
};

struct WtMeta {
  std::array<WtAxisMeta, 3> axes;
  int levels = 2;

  std::size_t retained_count() const {
    return axes[0].indices.size() + axes[1].indices.size() +
           axes[2].indices.size();
  }
};

struct BandanaMeta {
  // Position indices sorted by descending reliability (ties by lower index).
  std::vector<std::size_t> reliability_order;
  std::vector<double> reliabilities;  // per bit position
};

struct BitSequence {
  Bits bits;
  std::string scheme;
  std::string params;  // short human-readable parameter summary
  std::variant<std::monostate, SapheMeta, WtMeta, BandanaMeta> meta;
};

// Thrown by wt_reconcile when the retained-index overlap is too low
// (impersonation counter-measure); surfaced distinctly from other errors.
struct ReconcileAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// SAPHE

struct ThresholdPoint {
  double time_s;
  double value;  // m/s^2
};

// n_thresholds points, times uniform over [0, duration_s), values uniform
// over [-range_g * g, +range_g * g], ordered by time. Deterministic per seed.
std::vector<ThresholdPoint> saphe_thresholds(const SapheParams& params,
                                             double duration_s);

// Dynamic-range form: values drawn over [value_lo, value_hi].
std::vector<ThresholdPoint> saphe_thresholds(const SapheParams& params,
                                             double duration_s,
                                             double value_lo, double value_hi);

// gravity_align + 0.5-12 Hz band-pass; the z-axis of the result is the
// signal SAPHE challenges against.
AccelSeries saphe_preprocess(const AccelSeries& raw);

// One bit per threshold, ordered by threshold time: signal above the
// threshold value reads 1, below reads 0. Nearest-sample lookup in time;
// expects a preprocessed series. Throws when a threshold time falls outside
// the series span.
BitSequence saphe_quantize(const AccelSeries& series,
                           const std::vector<ThresholdPoint>& thresholds);

// Commitment H(r) to the threshold seed: SHA-256 of the 8-byte big-endian
// encoding.
Digest saphe_commit(std::uint64_t seed);

// Both parties evaluate both challenge sets against their local signal; the
// key is A's challenge bits followed by B's. Inputs must be preprocessed.
std::pair<BitSequence, BitSequence> saphe_pair(const AccelSeries& series_a,
                                               const AccelSeries& series_b,
                                               const SapheParams& params_a,
                                               const SapheParams& params_b);

// ---------------------------------------------------------------------------
// Walkie-Talkie / Gait-Key

// body_frame + 10 Hz low-pass + per-axis normalization to zero mean, unit
// length over the recording.
AccelSeries wt_preprocess(const AccelSeries& raw);

// Guard-band quantization over non-overlapping windows, per axis. Expects a
// preprocessed series. levels 2: samples above mu + alpha sigma read 1,
// below mu - alpha sigma read 0, in-band samples are dropped. levels 4:
// boundaries mu - alpha sigma, mu, mu + alpha sigma split four bands mapped
// to gray-ordered symbols 00,01,11,10 (every sample retained). Zero-variance
// windows contribute nothing. Axes are interleaved in round-robin order of
// retained entries.
BitSequence wt_quantize(const AccelSeries& series,
                        const WalkieTalkieParams& params);

// Reduces both sequences to the intersection of retained indices (per axis).
// Throws ReconcileAbort when |intersection| / max(|a|, |b|) <= 0.5 + epsilon.
std::pair<BitSequence, BitSequence> wt_reconcile(
    const BitSequence& a, const BitSequence& b,
    const WalkieTalkieParams& params);

// XOR of consecutive pa_window-bit windows; the trailing partial window is
// dropped. Requires at least two full windows.
BitSequence wt_privacy_amplify(const BitSequence& bits, std::size_t pa_window);

// ---------------------------------------------------------------------------
// BANDANA

// gravity_align + 0.5-12 Hz band-pass, heel-strike detection, segmentation
// into kCycleSamples-value cycles.
std::vector<GaitCycle> bandana_preprocess(const AccelSeries& raw);

// Core quantization over prepared cycles: each cycle splits into
// bits_per_cycle contiguous segments; a bit is 1 iff the segment sum of
// (instantaneous - mean) is positive (ties read 0 with reliability 0).
// Reliability is the absolute segment sum. The mapping variant collapses
// consecutive bit pairs (01,11 -> 1; 10,00 -> 0; pair reliability is the
// sum); the normalized variant scales each cycle and the mean gait to unit
// peak amplitude before differencing and then discards cycle patterns per
// the rejection table. Consumes extra cycles (when available) to replace
// rejected ones. Throws on insufficient cycles.
BitSequence bandana_bits(const std::vector<GaitCycle>& cycles,
                         const MeanGait& mean, const BandanaParams& params);

// Full pipeline from a raw series: preprocess, mean gait, quantize.
BitSequence bandana_quantize(const AccelSeries& raw,
                             const BandanaParams& params);

// Drops the discard_bits positions with the worst combined reliability rank
// (sum of each position's rank in the two orderings; rank ties resolved
// toward dropping the lower position index first) from both sequences.
// Output fingerprints keep original position order.
std::pair<BitSequence, BitSequence> bandana_select(const BitSequence& a,
                                                   const BitSequence& b,
                                                   const BandanaParams& params);

// Discard probabilities inverse to observed pattern frequency, scaled so the
// rarest observed pattern is never discarded.
std::map<std::uint16_t, double> make_rejection_table(
    const std::vector<double>& pattern_freq);

// ---------------------------------------------------------------------------
// IPI

// Per consecutive strike pair: v = floor(IPI_ms / (m * 1000 / f_s)) mod 2^q,
// gray-coded to a q-bit word (MSB first); the first k bits of each word are
// concatenated.
BitSequence ipi_quantize(const HeelStrikes& strikes, const IpiParams& params);

// ---------------------------------------------------------------------------
// Protocol runner shared by the analysis and attack layers

struct SchemeConfig {
  Scheme scheme = Scheme::saphe;
  SapheParams saphe;
  WalkieTalkieParams wt;
  BandanaParams bandana;
  IpiParams ipi;

  std::string summary() const;
};

// Outcome of one pairing between two raw recordings: the comparable
// fingerprints (equal length) and the derived keys. For Walkie-Talkie the
// fingerprint is the reconciled pre-amplification sequence and the key is
// the amplified one; for SAPHE key and fingerprint coincide; for BANDANA the
// fingerprint is the reliability-selected sequence; for IPI the gray-code
// bits truncated to the common length.
struct PairResult {
  BitSequence fingerprint_a, fingerprint_b;
  Bits key_a, key_b;
  bool aborted = false;
  std::string abort_reason;
};

PairResult pair_fingerprints(const AccelSeries& raw_a, const AccelSeries& raw_b,
                             const SchemeConfig& config,
                             std::uint64_t pair_seed);

}  // namespace gaitpair
