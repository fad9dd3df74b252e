#include "gaitpair/quantizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gaitpair/rng.hpp"
#include "gaitpair/signal.hpp"

namespace gaitpair {

namespace {

constexpr double kBandLoHz = 0.5;
constexpr double kBandHiHz = 12.0;
constexpr double kWtLowpassHz = 10.0;

Bits interleave_axes(const WtMeta& meta) {
  Bits out;
  const bool two_bit = meta.levels == 4;
  std::size_t rank = 0;
  while (true) {
    bool any = false;
    for (const auto& ax : meta.axes) {
      if (rank < ax.indices.size()) {
        any = true;
        std::uint8_t sym = ax.symbols[rank];
        if (two_bit) {
          out.push_back((sym >> 1) & 1u);
          out.push_back(sym & 1u);
        } else {
          out.push_back(sym & 1u);
        }
      }
    }
    if (!any) break;
    ++rank;
  }
  return out;
}

// Descending reliability; ties resolved toward the lower position index.
std::vector<std::size_t> reliability_order(const std::vector<double>& rels) {
  std::vector<std::size_t> order(rels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (rels[a] != rels[b]) return rels[a] > rels[b];
                     return a < b;
                   });
  return order;
}

std::vector<double> scaled_to_unit_peak(const std::vector<double>& v) {
  double peak = 0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak <= 0) return v;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / peak;
  return out;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::saphe: return "saphe";
    case Scheme::walkie_talkie: return "walkie-talkie";
    case Scheme::gait_key: return "gait-key";
    case Scheme::bandana: return "bandana";
    case Scheme::ipi: return "ipi";
  }
  throw std::invalid_argument("unknown scheme");
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "saphe") return Scheme::saphe;
  if (name == "walkie-talkie") return Scheme::walkie_talkie;
  if (name == "gait-key") return Scheme::gait_key;
  if (name == "bandana") return Scheme::bandana;
  if (name == "ipi") return Scheme::ipi;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string to_string(BandanaVariant v) {
  switch (v) {
    case BandanaVariant::original: return "original";
    case BandanaVariant::mapping: return "mapping";
    case BandanaVariant::normalized: return "normalized";
  }
  throw std::invalid_argument("unknown variant");
}

WalkieTalkieParams gait_key_params() {
  WalkieTalkieParams p;
  p.alpha = 0.9;
  p.window = 50;
  p.levels = 4;
  return p;
}

void BandanaParams::validate() const {
  if (bits_per_cycle == 0 || n_cycles == 0)
    throw std::invalid_argument("bandana: counts must be positive");
  if (bits_per_cycle * n_cycles != fingerprint_bits + discard_bits)
    throw std::invalid_argument(
        "bandana: bits_per_cycle * n_cycles != fingerprint + discard");
  if (kCycleSamples % bits_per_cycle != 0)
    throw std::invalid_argument(
        "bandana: bits_per_cycle must divide the cycle length");
  for (const auto& [pattern, p] : rejection_table) {
    if (pattern >= (1u << bits_per_cycle) || p < 0 || p > 1)
      throw std::invalid_argument("bandana: invalid rejection table");
  }
}

void IpiParams::validate() const {
  if (q < 1 || q > 16) throw std::invalid_argument("ipi: q out of range");
  if (k < 1 || k > q) throw std::invalid_argument("ipi: need 1 <= k <= q");
  if (!(f_s > 0)) throw std::invalid_argument("ipi: f_s must be positive");
  if (m < 1) throw std::invalid_argument("ipi: m must be >= 1");
}

// ---------------------------------------------------------------------------
// SAPHE

std::vector<ThresholdPoint> saphe_thresholds(const SapheParams& params,
                                             double duration_s) {
  double half = params.range_g * kGravity;
  return saphe_thresholds(params, duration_s, -half, half);
}

std::vector<ThresholdPoint> saphe_thresholds(const SapheParams& params,
                                             double duration_s,
                                             double value_lo, double value_hi) {
  if (params.n_thresholds < 1)
    throw std::invalid_argument("saphe: need at least one threshold");
  if (!(params.range_g > 0)) throw std::invalid_argument("saphe: range_g <= 0");
  if (!(duration_s > 0)) throw std::invalid_argument("saphe: duration <= 0");
  if (!(value_lo < value_hi))
    throw std::invalid_argument("saphe: empty value range");
  Rng rng(derive_seed(params.seed, "saphe-thresholds"));
  std::vector<ThresholdPoint> points(params.n_thresholds);
  for (auto& p : points) {
    p.time_s = rng.uniform(0, duration_s);
    p.value = rng.uniform(value_lo, value_hi);
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const ThresholdPoint& a, const ThresholdPoint& b) {
                     return a.time_s < b.time_s;
                   });
  return points;
}

AccelSeries saphe_preprocess(const AccelSeries& raw) {
  return bandpass(gravity_align(raw), kBandLoHz, kBandHiHz);
}

BitSequence saphe_quantize(const AccelSeries& series,
                           const std::vector<ThresholdPoint>& thresholds) {
  series.validate();
  const double t0 = series.start_time();
  const double span = series.duration();
  BitSequence out;
  out.scheme = "saphe";
  out.bits.reserve(thresholds.size());
  std::size_t cursor = 0;
  for (const auto& p : thresholds) {
    if (p.time_s < 0 || p.time_s > span)
      throw std::invalid_argument("saphe: threshold time outside series span");
    double t = t0 + p.time_s;
    // Threshold times are sorted, so a marching cursor finds the nearest
    // sample in one pass.
    while (cursor + 1 < series.samples.size() &&
           std::abs(series.samples[cursor + 1].t - t) <=
               std::abs(series.samples[cursor].t - t))
      ++cursor;
    double v = series.samples[cursor].z;
    out.bits.push_back(v > p.value ? 1 : 0);
  }
  return out;
}

Digest saphe_commit(std::uint64_t seed) {
  std::vector<std::uint8_t> enc(8);
  for (int i = 0; i < 8; ++i)
    enc[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
  return sha256(enc);
}

std::pair<BitSequence, BitSequence> saphe_pair(const AccelSeries& series_a,
                                               const AccelSeries& series_b,
                                               const SapheParams& params_a,
                                               const SapheParams& params_b) {
  double duration = std::min(series_a.duration(), series_b.duration());
  auto make = [&](const SapheParams& p, const AccelSeries& s) {
    if (!p.dynamic_range) return saphe_thresholds(p, duration);
    double lo = s.samples.front().z, hi = lo;
    for (const auto& smp : s.samples) {
      lo = std::min(lo, smp.z);
      hi = std::max(hi, smp.z);
    }
    if (!(lo < hi)) {
      lo -= 1e-6;
      hi += 1e-6;
    }
    return saphe_thresholds(p, duration, lo, hi);
  };
  std::vector<ThresholdPoint> thr_a = make(params_a, series_a);
  std::vector<ThresholdPoint> thr_b = make(params_b, series_b);

  auto key_for = [&](const AccelSeries& s) {
    BitSequence ka = saphe_quantize(s, thr_a);
    BitSequence kb = saphe_quantize(s, thr_b);
    BitSequence key;
    key.scheme = "saphe";
    key.bits = ka.bits;
    key.bits.insert(key.bits.end(), kb.bits.begin(), kb.bits.end());
    key.meta = SapheMeta{params_a.seed, thr_a.size() + thr_b.size()};
    return key;
  };
  return {key_for(series_a), key_for(series_b)};
}

// ---------------------------------------------------------------------------
// Walkie-Talkie / Gait-Key

AccelSeries wt_preprocess(const AccelSeries& raw) {
  AccelSeries s = lowpass(body_frame(raw), kWtLowpassHz);
  // Zero mean, unit length per axis over the recording.
  auto normalize = [&](auto get, auto set) {
    double mean = 0;
    for (auto& smp : s.samples) mean += get(smp);
    mean /= static_cast<double>(s.samples.size());
    double norm = 0;
    for (auto& smp : s.samples) {
      double v = get(smp) - mean;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& smp : s.samples) {
      double v = get(smp) - mean;
      set(smp, norm > 0 ? v / norm : 0.0);
    }
  };
  normalize([](const AccelSample& p) { return p.x; },
            [](AccelSample& p, double v) { p.x = v; });
  normalize([](const AccelSample& p) { return p.y; },
            [](AccelSample& p, double v) { p.y = v; });
  normalize([](const AccelSample& p) { return p.z; },
            [](AccelSample& p, double v) { p.z = v; });
  return s;
}

BitSequence wt_quantize(const AccelSeries& series,
                        const WalkieTalkieParams& params) {
  series.validate();
  if (params.window < 2) throw std::invalid_argument("wt: window must be >= 2");
  if (!(params.alpha > 0)) throw std::invalid_argument("wt: alpha must be > 0");
  if (params.levels != 2 && params.levels != 4)
    throw std::invalid_argument("wt: levels must be 2 or 4");

  WtMeta meta;
  meta.levels = params.levels;
  const std::array<std::vector<double>, 3> axes = {
      series.axis_x(), series.axis_y(), series.axis_z()};
  const std::size_t n = series.size();
  const std::size_t n_windows = n / params.window;

  for (std::size_t a = 0; a < 3; ++a) {
    const auto& axis = axes[a];
    auto& am = meta.axes[a];
    for (std::size_t w = 0; w < n_windows; ++w) {
      const std::size_t lo = w * params.window;
      const std::size_t hi = lo + params.window;
      double mu = 0;
      for (std::size_t i = lo; i < hi; ++i) mu += axis[i];
      mu /= static_cast<double>(params.window);
      double var = 0;
      for (std::size_t i = lo; i < hi; ++i)
        var += (axis[i] - mu) * (axis[i] - mu);
      double sigma = std::sqrt(var / static_cast<double>(params.window));
      if (sigma <= 0) continue;  // flat window contributes nothing
      const double upper = mu + params.alpha * sigma;
      const double lower = mu - params.alpha * sigma;
      for (std::size_t i = lo; i < hi; ++i) {
        double v = axis[i];
        if (params.levels == 2) {
          if (v > upper) {
            am.indices.push_back(static_cast<std::uint32_t>(i));
            am.symbols.push_back(1);
          } else if (v < lower) {
            am.indices.push_back(static_cast<std::uint32_t>(i));
            am.symbols.push_back(0);
          }
        } else {
          // Bands low to high read 00, 01, 11, 10 (gray ordered).
          std::uint8_t sym;
          if (v < lower) {
            sym = 0b00;
          } else if (v < mu) {
            sym = 0b01;
          } else if (v < upper) {
            sym = 0b11;
          } else {
            sym = 0b10;
          }
          am.indices.push_back(static_cast<std::uint32_t>(i));
          am.symbols.push_back(sym);
        }
      }
    }
  }

  BitSequence out;
  out.scheme = params.levels == 4 ? "gait-key" : "walkie-talkie";
  {
    std::ostringstream ss;
    ss << "alpha=" << params.alpha << ",window=" << params.window
       << ",levels=" << params.levels;
    out.params = ss.str();
  }
  out.bits = interleave_axes(meta);
  out.meta = std::move(meta);
  return out;
}

std::pair<BitSequence, BitSequence> wt_reconcile(
    const BitSequence& a, const BitSequence& b,
    const WalkieTalkieParams& params) {
  const auto* ma = std::get_if<WtMeta>(&a.meta);
  const auto* mb = std::get_if<WtMeta>(&b.meta);
  if (!ma || !mb)
    throw std::invalid_argument("wt_reconcile: inputs lack retained indices");
  if (ma->levels != mb->levels)
    throw std::invalid_argument("wt_reconcile: level mismatch");

  WtMeta ra, rb;
  ra.levels = rb.levels = ma->levels;
  std::size_t kept = 0;
  for (std::size_t ax = 0; ax < 3; ++ax) {
    const auto& ea = ma->axes[ax];
    const auto& eb = mb->axes[ax];
    std::size_t i = 0, j = 0;
    while (i < ea.indices.size() && j < eb.indices.size()) {
      if (ea.indices[i] < eb.indices[j]) {
        ++i;
      } else if (ea.indices[i] > eb.indices[j]) {
        ++j;
      } else {
        ra.axes[ax].indices.push_back(ea.indices[i]);
        ra.axes[ax].symbols.push_back(ea.symbols[i]);
        rb.axes[ax].indices.push_back(eb.indices[j]);
        rb.axes[ax].symbols.push_back(eb.symbols[j]);
        ++kept;
        ++i;
        ++j;
      }
    }
  }

  const std::size_t denom =
      std::max(ma->retained_count(), mb->retained_count());
  const double overlap =
      denom == 0 ? 0.0
                 : static_cast<double>(kept) / static_cast<double>(denom);
  if (overlap <= 0.5 + params.epsilon) {
    std::ostringstream ss;
    ss << "reconciliation overlap " << overlap << " <= "
       << (0.5 + params.epsilon);
    throw ReconcileAbort(ss.str());
  }

  auto build = [&](const BitSequence& src, WtMeta&& meta) {
    BitSequence out;
    out.scheme = src.scheme;
    out.params = src.params;
    out.bits = interleave_axes(meta);
    out.meta = std::move(meta);
    return out;
  };
  return {build(a, std::move(ra)), build(b, std::move(rb))};
}

BitSequence wt_privacy_amplify(const BitSequence& bits, std::size_t pa_window) {
  if (pa_window == 0) throw std::invalid_argument("pa_window must be positive");
  const std::size_t n_windows = bits.bits.size() / pa_window;
  if (n_windows < 2)
    throw std::invalid_argument("wt_privacy_amplify: too few bits");
  BitSequence out;
  out.scheme = bits.scheme;
  out.params = bits.params;
  out.bits.reserve((n_windows - 1) * pa_window);
  for (std::size_t w = 0; w + 1 < n_windows; ++w) {
    for (std::size_t j = 0; j < pa_window; ++j) {
      out.bits.push_back(bits.bits[w * pa_window + j] ^
                         bits.bits[(w + 1) * pa_window + j]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// BANDANA

std::vector<GaitCycle> bandana_preprocess(const AccelSeries& raw) {
  AccelSeries pre = bandpass(gravity_align(raw), kBandLoHz, kBandHiHz);
  HeelStrikes strikes = detect_heel_strikes(pre);
  return segment_cycles(pre, strikes);
}

BitSequence bandana_bits(const std::vector<GaitCycle>& cycles,
                         const MeanGait& mean, const BandanaParams& params) {
  params.validate();
  if (mean.values.size() != kCycleSamples)
    throw std::invalid_argument("bandana: bad mean gait length");
  const std::size_t seg_len = kCycleSamples / params.bits_per_cycle;
  const bool normalized = params.variant == BandanaVariant::normalized;
  const std::vector<double> mean_vals =
      normalized ? scaled_to_unit_peak(mean.values) : mean.values;

  Bits raw_bits;
  std::vector<double> rels;
  std::size_t used = 0;
  for (std::size_t ci = 0; ci < cycles.size() && used < params.n_cycles; ++ci) {
    const auto& cyc = cycles[ci];
    if (cyc.values.size() != kCycleSamples)
      throw std::invalid_argument("bandana: bad cycle length");
    const std::vector<double> vals =
        normalized ? scaled_to_unit_peak(cyc.values) : cyc.values;

    Bits cyc_bits(params.bits_per_cycle);
    std::vector<double> cyc_rels(params.bits_per_cycle);
    for (std::size_t s = 0; s < params.bits_per_cycle; ++s) {
      double sum = 0;
      for (std::size_t j = s * seg_len; j < (s + 1) * seg_len; ++j)
        sum += vals[j] - mean_vals[j];
      cyc_bits[s] = sum > 0 ? 1 : 0;  // ties read 0
      cyc_rels[s] = std::abs(sum);
    }

    if (normalized && !params.rejection_table.empty()) {
      std::uint16_t pattern = 0;
      for (auto b : cyc_bits) pattern = static_cast<std::uint16_t>((pattern << 1) | b);
      auto it = params.rejection_table.find(pattern);
      if (it != params.rejection_table.end()) {
        double u = Rng(derive_seed(params.rejection_seed, "bandana-reject", ci))
                       .uniform01();
        if (u < it->second) continue;  // discard this cycle
      }
    }

    raw_bits.insert(raw_bits.end(), cyc_bits.begin(), cyc_bits.end());
    rels.insert(rels.end(), cyc_rels.begin(), cyc_rels.end());
    ++used;
  }
  if (used < params.n_cycles)
    throw std::runtime_error("bandana: insufficient cycles");

  if (params.variant == BandanaVariant::mapping) {
    // 01,11 -> 1 and 10,00 -> 0: the mapped bit is the latter bit of each
    // pair; pair reliability is the sum of the members'.
    Bits mapped(raw_bits.size() / 2);
    std::vector<double> mapped_rels(raw_bits.size() / 2);
    for (std::size_t i = 0; i < mapped.size(); ++i) {
      mapped[i] = raw_bits[2 * i + 1];
      mapped_rels[i] = rels[2 * i] + rels[2 * i + 1];
    }
    raw_bits = std::move(mapped);
    rels = std::move(mapped_rels);
  }

  BitSequence out;
  out.scheme = "bandana";
  out.params = "variant=" + to_string(params.variant);
  out.bits = std::move(raw_bits);
  BandanaMeta meta;
  meta.reliabilities = std::move(rels);
  meta.reliability_order = reliability_order(meta.reliabilities);
  out.meta = std::move(meta);
  return out;
}

BitSequence bandana_quantize(const AccelSeries& raw,
                             const BandanaParams& params) {
  std::vector<GaitCycle> cycles = bandana_preprocess(raw);
  if (cycles.size() < params.n_cycles)
    throw std::runtime_error("bandana: insufficient cycles");
  MeanGait mean = mean_gait(cycles);
  return bandana_bits(cycles, mean, params);
}

std::pair<BitSequence, BitSequence> bandana_select(
    const BitSequence& a, const BitSequence& b, const BandanaParams& params) {
  const auto* ma = std::get_if<BandanaMeta>(&a.meta);
  const auto* mb = std::get_if<BandanaMeta>(&b.meta);
  if (!ma || !mb)
    throw std::invalid_argument("bandana_select: inputs lack reliabilities");
  const std::size_t n = a.bits.size();
  if (b.bits.size() != n)
    throw std::invalid_argument("bandana_select: length mismatch");
  if (ma->reliability_order.size() != n || mb->reliability_order.size() != n)
    throw std::invalid_argument("bandana_select: bad metadata");

  // Scale the discard count with the sequence length so variant-reduced
  // sequences keep the same retention ratio.
  const std::size_t total = params.fingerprint_bits + params.discard_bits;
  const std::size_t n_discard = n * params.discard_bits / total;

  std::vector<std::size_t> combined(n, 0);
  for (std::size_t rank = 0; rank < n; ++rank) {
    combined[ma->reliability_order[rank]] += rank;
    combined[mb->reliability_order[rank]] += rank;
  }
  // Worst combined rank first; ties drop the lower position index first.
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  std::stable_sort(positions.begin(), positions.end(),
                   [&](std::size_t p, std::size_t q) {
                     if (combined[p] != combined[q])
                       return combined[p] > combined[q];
                     return p < q;
                   });
  std::vector<bool> drop(n, false);
  for (std::size_t i = 0; i < n_discard; ++i) drop[positions[i]] = true;

  auto filter = [&](const BitSequence& src) {
    BitSequence out;
    out.scheme = src.scheme;
    out.params = src.params;
    out.bits.reserve(n - n_discard);
    for (std::size_t i = 0; i < n; ++i) {
      if (!drop[i]) out.bits.push_back(src.bits[i]);
    }
    return out;
  };
  return {filter(a), filter(b)};
}

std::map<std::uint16_t, double> make_rejection_table(
    const std::vector<double>& pattern_freq) {
  double min_pos = 0;
  for (double f : pattern_freq) {
    if (f > 0 && (min_pos == 0 || f < min_pos)) min_pos = f;
  }
  std::map<std::uint16_t, double> table;
  if (min_pos <= 0) return table;
  for (std::size_t p = 0; p < pattern_freq.size(); ++p) {
    if (pattern_freq[p] > min_pos)
      table[static_cast<std::uint16_t>(p)] = 1.0 - min_pos / pattern_freq[p];
  }
  return table;
}

// ---------------------------------------------------------------------------
// IPI

BitSequence ipi_quantize(const HeelStrikes& strikes, const IpiParams& params) {
  params.validate();
  if (strikes.size() < 2)
    throw std::invalid_argument("ipi: need at least 2 strikes");
  const double step_ms = params.m * 1000.0 / params.f_s;
  const std::uint32_t mod = 1u << params.q;
  BitSequence out;
  out.scheme = "ipi";
  {
    std::ostringstream ss;
    ss << "m=" << params.m << ",q=" << params.q << ",k=" << params.k
       << ",f_s=" << params.f_s;
    out.params = ss.str();
  }
  out.bits.reserve((strikes.size() - 1) * params.k);
  for (std::size_t i = 0; i + 1 < strikes.size(); ++i) {
    double ipi_ms = (strikes.times_s[i + 1] - strikes.times_s[i]) * 1000.0;
    if (!(ipi_ms > 0)) throw std::invalid_argument("ipi: non-positive interval");
    std::uint32_t v =
        static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(std::floor(ipi_ms / step_ms)) % mod);
    std::uint32_t g = gray_code(v);
    for (unsigned b = 0; b < params.k; ++b) {
      out.bits.push_back(
          static_cast<std::uint8_t>((g >> (params.q - 1 - b)) & 1u));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Protocol runner

std::string SchemeConfig::summary() const {
  std::ostringstream ss;
  ss << to_string(scheme);
  switch (scheme) {
    case Scheme::saphe:
      ss << ",n_thresholds=" << saphe.n_thresholds << ",range_g=" << saphe.range_g
         << ",dynamic_range=" << (saphe.dynamic_range ? 1 : 0);
      break;
    case Scheme::walkie_talkie:
    case Scheme::gait_key:
      ss << ",alpha=" << wt.alpha << ",window=" << wt.window
         << ",epsilon=" << wt.epsilon << ",levels=" << wt.levels
         << ",pa_window=" << wt.pa_window;
      break;
    case Scheme::bandana:
      ss << ",variant=" << to_string(bandana.variant)
         << ",n_cycles=" << bandana.n_cycles;
      break;
    case Scheme::ipi:
      ss << ",m=" << ipi.m << ",q=" << ipi.q << ",k=" << ipi.k
         << ",f_s=" << ipi.f_s;
      break;
  }
  return ss.str();
}

PairResult pair_fingerprints(const AccelSeries& raw_a, const AccelSeries& raw_b,
                             const SchemeConfig& config,
                             std::uint64_t pair_seed) {
  raw_a.validate();
  raw_b.validate();
  double t0 = std::max(raw_a.start_time(), raw_b.start_time());
  double t1 = std::min(raw_a.end_time(), raw_b.end_time());
  if (!(t1 > t0))
    throw std::invalid_argument("pair_fingerprints: no common time span");
  AccelSeries a = raw_a.slice_time(t0, t1);
  AccelSeries b = raw_b.slice_time(t0, t1);

  PairResult result;
  auto abort_with = [&](const std::string& why) {
    result.aborted = true;
    result.abort_reason = why;
    return result;
  };

  switch (config.scheme) {
    case Scheme::saphe: {
      SapheParams pa = config.saphe;
      SapheParams pb = config.saphe;
      pa.seed = derive_seed(pair_seed, "saphe-seed-a");
      pb.seed = derive_seed(pair_seed, "saphe-seed-b");
      auto [ka, kb] =
          saphe_pair(saphe_preprocess(a), saphe_preprocess(b), pa, pb);
      result.fingerprint_a = std::move(ka);
      result.fingerprint_b = std::move(kb);
      result.key_a = result.fingerprint_a.bits;
      result.key_b = result.fingerprint_b.bits;
      return result;
    }
    case Scheme::walkie_talkie:
    case Scheme::gait_key: {
      WalkieTalkieParams params = config.wt;
      if (config.scheme == Scheme::gait_key && params.levels != 4)
        params = gait_key_params();
      BitSequence qa = wt_quantize(wt_preprocess(a), params);
      BitSequence qb = wt_quantize(wt_preprocess(b), params);
      try {
        auto [ra, rb] = wt_reconcile(qa, qb, params);
        result.fingerprint_a = ra;
        result.fingerprint_b = rb;
        result.key_a = wt_privacy_amplify(ra, params.pa_window).bits;
        result.key_b = wt_privacy_amplify(rb, params.pa_window).bits;
      } catch (const ReconcileAbort& e) {
        return abort_with(e.what());
      } catch (const std::invalid_argument& e) {
        return abort_with(e.what());  // too few bits to amplify
      }
      return result;
    }
    case Scheme::bandana: {
      try {
        BitSequence qa = bandana_quantize(a, config.bandana);
        BitSequence qb = bandana_quantize(b, config.bandana);
        auto [fa, fb] = bandana_select(qa, qb, config.bandana);
        result.fingerprint_a = std::move(fa);
        result.fingerprint_b = std::move(fb);
        result.key_a = result.fingerprint_a.bits;
        result.key_b = result.fingerprint_b.bits;
      } catch (const std::runtime_error& e) {
        return abort_with(e.what());
      }
      return result;
    }
    case Scheme::ipi: {
      try {
        auto strikes_of = [&](const AccelSeries& s) {
          AccelSeries pre = bandpass(gravity_align(s), kBandLoHz, kBandHiHz);
          return detect_heel_strikes(pre);
        };
        BitSequence qa = ipi_quantize(strikes_of(a), config.ipi);
        BitSequence qb = ipi_quantize(strikes_of(b), config.ipi);
        std::size_t n = std::min(qa.bits.size(), qb.bits.size());
        if (n == 0) return abort_with("ipi: no common bits");
        qa.bits.resize(n);
        qb.bits.resize(n);
        result.fingerprint_a = std::move(qa);
        result.fingerprint_b = std::move(qb);
        result.key_a = result.fingerprint_a.bits;
        result.key_b = result.fingerprint_b.bits;
      } catch (const std::runtime_error& e) {
        return abort_with(e.what());
      }
      return result;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace gaitpair
