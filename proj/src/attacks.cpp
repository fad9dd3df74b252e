#include "gaitpair/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gaitpair/ingest.hpp"
#include "gaitpair/parallel.hpp"
#include "gaitpair/rng.hpp"
#include "gaitpair/signal.hpp"

namespace gaitpair {

namespace {

// Average ranks (1-based) with ties sharing the mean rank.
std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

// The attacker only sees the retained indices, not the bits. Runs of
// consecutive indices are assigned alternating values starting at `phase`.
Bits reconciliation_guess(const WtMeta& meta, int phase) {
  WtMeta guess = meta;
  for (auto& ax : guess.axes) {
    int run = -1;
    std::uint32_t prev = 0;
    for (std::size_t i = 0; i < ax.indices.size(); ++i) {
      if (run < 0 || ax.indices[i] != prev + 1) ++run;
      prev = ax.indices[i];
      ax.symbols[i] = static_cast<std::uint8_t>((run + phase) & 1);
    }
  }
  // Re-interleave exactly like the quantizer.
  BitSequence seq;
  seq.meta = guess;
  Bits out;
  std::size_t rank = 0;
  while (true) {
    bool any = false;
    for (const auto& ax : guess.axes) {
      if (rank < ax.indices.size()) {
        any = true;
        out.push_back(ax.symbols[rank] & 1u);
      }
    }
    if (!any) break;
    ++rank;
  }
  return out;
}

Bits amplify_or_raw(const Bits& bits, std::size_t pa_window) {
  if (bits.size() / pa_window >= 2) {
    BitSequence tmp;
    tmp.bits = bits;
    return wt_privacy_amplify(tmp, pa_window).bits;
  }
  return bits;  // too short to amplify; compare raw
}

}  // namespace

BinomialTail one_shot(Scheme scheme, unsigned key_bits,
                      unsigned corrected_bits) {
  switch (scheme) {
    case Scheme::saphe:
    case Scheme::walkie_talkie:
    case Scheme::gait_key:
      if (corrected_bits != 0)
        throw std::invalid_argument(
            "one_shot: this scheme pairs uncorrected keys");
      break;
    case Scheme::bandana:
    case Scheme::ipi:
      break;
  }
  return adversary_success(key_bits, corrected_bits);
}

AttackOutcome wt_reconciliation_attack(const BitSequence& victim,
                                       const WalkieTalkieParams& params) {
  const auto* meta = std::get_if<WtMeta>(&victim.meta);
  if (!meta)
    throw std::invalid_argument(
        "wt_reconciliation_attack: victim lacks retained indices");
  if (meta->levels != 2)
    throw std::invalid_argument(
        "wt_reconciliation_attack: defined for binary quantization");
  if (meta->retained_count() == 0)
    throw std::invalid_argument("wt_reconciliation_attack: empty meta");

  Bits victim_key = amplify_or_raw(victim.bits, params.pa_window);
  double best = 0;
  for (int phase = 0; phase < 2; ++phase) {
    Bits guess = reconciliation_guess(*meta, phase);
    Bits guess_key = amplify_or_raw(guess, params.pa_window);
    best = std::max(best, hamming_similarity(victim_key, guess_key));
  }

  AttackOutcome out;
  out.scheme = victim.scheme;
  out.attack = "wt-reconciliation";
  out.trials = 1;
  out.similarity_distribution = dist_stats({best});
  out.success_rate = best > 0.5 ? 1.0 : 0.0;
  return out;
}

AttackOutcome wt_reconciliation_study(WtVictimKind kind,
                                      const WalkieTalkieParams& params,
                                      std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  std::vector<double> sims(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, "wt-recon-victim", t);
    BitSequence victim;
    if (kind == WtVictimKind::slow_sine) {
      Rng rng(trial_seed);
      const double rate = 50.0;
      const double f = rng.uniform(0.10, 0.20);
      const double phase = rng.uniform(0, 2.0 * M_PI);
      AccelSeries s;
      s.rate_hz = rate;
      s.subject_id = "sine";
      const std::size_t n = params.window * 6;
      s.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        double ti = static_cast<double>(i) / rate;
        s.samples[i].t = ti;
        s.samples[i].z = std::sin(2.0 * M_PI * f * ti + phase);
      }
      victim = wt_quantize(s, params);
    } else {
      SynthSpec spec;
      spec.n_cycles = 40;
      spec.jitter_sd_s = 0.02;
      spec.phase_jitter_sd = 0.25;
      spec.amp_jitter_frac = 0.1;
      spec.noise_sd = 0.3;
      spec.randomize_base_phases = true;
      spec.seed = trial_seed;
      victim = wt_quantize(wt_preprocess(synth_gait(spec).series), params);
    }
    sims[t] = wt_reconciliation_attack(victim, params)
                  .similarity_distribution.mean;
  }

  AttackOutcome out;
  out.scheme = "walkie-talkie";
  out.attack = "wt-reconciliation";
  out.trials = trials;
  out.similarity_distribution = dist_stats(std::move(sims));
  out.success_rate = out.similarity_distribution.mean > 0.5 ? 1.0 : 0.0;
  return out;
}

AttackOutcome bandana_pattern_attack(const std::vector<double>& histogram,
                                     unsigned fingerprint_bits,
                                     unsigned correctable, std::size_t trials,
                                     std::uint64_t seed, unsigned workers) {
  if (histogram.size() != 16)
    throw std::invalid_argument(
        "bandana_pattern_attack: need 16 4-bit pattern frequencies");
  double sum = 0;
  for (double f : histogram) {
    if (f < 0) throw std::invalid_argument("negative histogram entry");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("histogram must sum to 1");
  if (fingerprint_bits == 0 || fingerprint_bits % 4 != 0)
    throw std::invalid_argument("fingerprint_bits must be a multiple of 4");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");

  std::array<double, 16> cdf{};
  double acc = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    acc += histogram[i];
    cdf[i] = acc;
  }
  cdf[15] = 1.0;

  const unsigned n_chunks = fingerprint_bits / 4;
  std::vector<std::uint8_t> success(trials, 0);
  std::vector<double> sims(trials, 0.0);
  parallel_for(trials, workers, [&](std::size_t t) {
    Rng rng(derive_seed(seed, "bandana-pattern", t));
    auto draw_chunk = [&]() {
      double u = rng.uniform01();
      return static_cast<unsigned>(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    };
    unsigned dist = 0;
    for (unsigned c = 0; c < n_chunks; ++c) {
      unsigned va = draw_chunk();
      unsigned vb = draw_chunk();
      dist += static_cast<unsigned>(__builtin_popcount(va ^ vb));
    }
    success[t] = dist <= correctable ? 1 : 0;
    sims[t] = 1.0 - static_cast<double>(dist) /
                        static_cast<double>(fingerprint_bits);
  });

  AttackOutcome out;
  out.scheme = "bandana";
  out.attack = "bandana-pattern";
  out.trials = trials;
  out.success_rate =
      static_cast<double>(std::accumulate(success.begin(), success.end(),
                                          std::size_t{0})) /
      static_cast<double>(trials);
  out.similarity_distribution = dist_stats(std::move(sims));
  double uniform = adversary_success(fingerprint_bits, correctable).value;
  out.success_ratio_vs_uniform =
      uniform > 0 ? out.success_rate / uniform : 0.0;
  return out;
}

AttackOutcome ipi_bias_attack(double mean_ipi_ms, double sd_ipi_ms,
                              const IpiParams& params, std::size_t trials,
                              std::uint64_t seed, unsigned fingerprint_bits,
                              unsigned correctable) {
  if (!(sd_ipi_ms > 0)) throw std::invalid_argument("sd must be positive");
  if (trials < 2) throw std::invalid_argument("need at least 2 intervals");
  params.validate();

  std::vector<double> victim_ipi =
      synth_ipi_ms(mean_ipi_ms, sd_ipi_ms, trials, derive_seed(seed, "victim"));
  std::vector<double> attacker_ipi = synth_ipi_ms(
      mean_ipi_ms, sd_ipi_ms, trials, derive_seed(seed, "attacker"));
  Bits victim = ipi_quantize(strikes_from_ipis(victim_ipi), params).bits;
  Bits attacker = ipi_quantize(strikes_from_ipis(attacker_ipi), params).bits;

  // Chunk-change distribution of the victim's own stream.
  const unsigned k = params.k;
  const std::size_t n_chunks = victim.size() / k;
  std::vector<std::size_t> change_counts(k + 1, 0);
  for (std::size_t c = 0; c + 1 < n_chunks; ++c) {
    unsigned diff = 0;
    for (unsigned b = 0; b < k; ++b)
      diff += victim[c * k + b] != victim[(c + 1) * k + b] ? 1u : 0u;
    ++change_counts[diff];
  }
  AttackOutcome out;
  out.scheme = "ipi";
  out.attack = "ipi-bias";
  out.trials = trials;
  out.chunk_change_fractions.assign(k + 1, 0.0);
  const double pair_count = static_cast<double>(n_chunks - 1);
  for (unsigned d = 0; d <= k; ++d)
    out.chunk_change_fractions[d] =
        static_cast<double>(change_counts[d]) / pair_count;
  out.identical_chunk_fraction = out.chunk_change_fractions[0];

  // Fingerprint-level success of the attacker's independent stream.
  const std::size_t n_bits = std::min(victim.size(), attacker.size());
  const std::size_t n_fp = n_bits / fingerprint_bits;
  std::vector<double> sims;
  sims.reserve(n_fp);
  std::size_t successes = 0;
  for (std::size_t f = 0; f < n_fp; ++f) {
    unsigned dist = 0;
    for (unsigned b = 0; b < fingerprint_bits; ++b) {
      std::size_t i = f * fingerprint_bits + b;
      dist += victim[i] != attacker[i] ? 1u : 0u;
    }
    if (dist <= correctable) ++successes;
    sims.push_back(1.0 -
                   static_cast<double>(dist) /
                       static_cast<double>(fingerprint_bits));
  }
  if (n_fp > 0)
    out.success_rate =
        static_cast<double>(successes) / static_cast<double>(n_fp);
  out.similarity_distribution = dist_stats(std::move(sims));
  return out;
}

AttackOutcome video_impersonation(const AccelSeries& victim,
                                  const NoiseModel& model,
                                  const SchemeConfig& config,
                                  std::size_t trials, std::uint64_t seed,
                                  const CodeParams& code,
                                  unsigned key_match_bits, unsigned workers) {
  model.validate();
  victim.validate();
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");

  struct TrialResult {
    bool aborted = true;
    bool success = false;
    double similarity = 0;
  };
  std::vector<TrialResult> results(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    TrialResult& r = results[t];
    AccelSeries attacker =
        add_noise(victim, model, derive_seed(seed, "video-noise", t));
    PairResult pr = pair_fingerprints(victim, attacker, config,
                                      derive_seed(seed, "video-pair", t));
    if (pr.aborted || pr.fingerprint_a.bits.empty()) return;
    r.aborted = false;
    r.similarity =
        hamming_similarity(pr.fingerprint_a.bits, pr.fingerprint_b.bits);
    switch (config.scheme) {
      case Scheme::saphe:
      case Scheme::walkie_talkie:
      case Scheme::gait_key: {
        if (pr.key_a.size() < key_match_bits ||
            pr.key_b.size() < key_match_bits)
          return;
        r.success = std::equal(pr.key_a.begin(),
                               pr.key_a.begin() + key_match_bits,
                               pr.key_b.begin());
        return;
      }
      case Scheme::bandana:
      case Scheme::ipi: {
        if (pr.key_a.size() < code.n || pr.key_b.size() < code.n) return;
        Bits fa(pr.key_a.begin(), pr.key_a.begin() + code.n);
        Bits fb(pr.key_b.begin(), pr.key_b.begin() + code.n);
        auto [sketch, key] =
            commit(fa, code, derive_seed(seed, "video-commit", t));
        auto recovered = decommit(sketch, fb);
        r.success = recovered.has_value() && *recovered == key;
        return;
      }
    }
  });

  AttackOutcome out;
  out.scheme = to_string(config.scheme);
  out.attack = "video-impersonation";
  out.trials = trials;
  std::vector<double> sims;
  std::size_t successes = 0;
  for (const auto& r : results) {
    if (r.aborted) {
      ++out.aborts;
      continue;
    }
    sims.push_back(r.similarity);
    if (r.success) ++successes;
  }
  out.success_rate =
      static_cast<double>(successes) / static_cast<double>(trials);
  out.similarity_distribution = dist_stats(std::move(sims));
  return out;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman: length mismatch");
  if (a.size() < 3) throw std::invalid_argument("spearman: need >= 3 values");
  std::vector<double> ra = average_ranks(a);
  std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va < 1e-12 || vb < 1e-12)
    throw std::invalid_argument("spearman: constant input has no ranks");
  return cov / std::sqrt(va * vb);
}

}  // namespace gaitpair
