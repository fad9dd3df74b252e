#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaitpair/accel.hpp"
#include "gaitpair/analysis.hpp"
#include "gaitpair/fuzzy.hpp"
#include "gaitpair/quantizers.hpp"

namespace gaitpair {

struct AttackOutcome {
  std::string scheme;
  std::string attack;
  std::size_t trials = 1;
  double success_rate = 0;
  DistStats similarity_distribution;
  std::size_t aborts = 0;
  // Attack-specific extras.
  double success_ratio_vs_uniform = 0;        // bandana pattern attack
  std::vector<double> chunk_change_fractions;  // ipi bias attack
  double identical_chunk_fraction = 0;         // ipi bias attack
};

// One-shot success probability per scheme. SAPHE and Walkie-Talkie pair
// uncorrected keys (corrected_bits must be 0); BANDANA and IPI correct up to
// corrected_bits of a key_bits fingerprint.
BinomialTail one_shot(Scheme scheme, unsigned key_bits, unsigned corrected_bits);

// Reconciliation eavesdropper (binary Walkie-Talkie): assigns alternating
// guesses to maximal runs of consecutive retained indices, tries both
// phases, amplifies, and scores against the victim's amplified key.
// Deterministic for a given victim.
AttackOutcome wt_reconciliation_attack(const BitSequence& victim,
                                       const WalkieTalkieParams& params);

// Corpus form: synthesizes `trials` victims and aggregates the attack.
enum class WtVictimKind { slow_sine, gait };

AttackOutcome wt_reconciliation_study(WtVictimKind kind,
                                      const WalkieTalkieParams& params,
                                      std::size_t trials, std::uint64_t seed);

// Samples attacker and victim fingerprints as independent 4-bit chunks from
// the histogram; success = Hamming distance <= correctable. Reports the
// ratio against the uniform closed form.
AttackOutcome bandana_pattern_attack(const std::vector<double>& histogram,
                                     unsigned fingerprint_bits,
                                     unsigned correctable,
                                     std::size_t trials, std::uint64_t seed,
                                     unsigned workers = 1);

// Attacker and victim draw independent IPI streams from the same correlated
// population model (see synth_ipi_ms); reports per-chunk match statistics,
// the chunk-change distribution of the victim stream, and the
// (fingerprint_bits, correctable)-corrected success rate.
AttackOutcome ipi_bias_attack(double mean_ipi_ms, double sd_ipi_ms,
                              const IpiParams& params, std::size_t trials,
                              std::uint64_t seed,
                              unsigned fingerprint_bits = 32,
                              unsigned correctable = 8);

// Video impersonation: attacker signal = add_noise(victim). Similarity is
// fingerprint-level; success is exact agreement of the first
// key_match_bits key bits (SAPHE, Walkie-Talkie, Gait-Key) or fuzzy
// decommitment under `code` (BANDANA, IPI). Aborts count as failures.
AttackOutcome video_impersonation(const AccelSeries& victim,
                                  const NoiseModel& model,
                                  const SchemeConfig& config,
                                  std::size_t trials, std::uint64_t seed,
                                  const CodeParams& code = {31, 16, 3},
                                  unsigned key_match_bits = 16,
                                  unsigned workers = 1);

// Spearman rank correlation with average ranks for ties. Throws on length
// mismatch, fewer than 3 values, or constant input.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace gaitpair
