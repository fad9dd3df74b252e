#include "gaitpair/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gaitpair/parallel.hpp"
#include "gaitpair/rng.hpp"

namespace gaitpair {

DistStats dist_stats(std::vector<double> values) {
  DistStats st;
  st.n = values.size();
  if (values.empty()) return st;
  std::sort(values.begin(), values.end());
  st.min = values.front();
  st.max = values.back();
  double sum = std::accumulate(values.begin(), values.end(), 0.0);
  st.mean = sum / static_cast<double>(values.size());
  double acc = 0;
  for (double v : values) acc += (v - st.mean) * (v - st.mean);
  st.sd = std::sqrt(acc / static_cast<double>(values.size()));
  std::size_t half = values.size() / 2;
  st.median = values.size() % 2 == 1
                  ? values[half]
                  : 0.5 * (values[half - 1] + values[half]);
  return st;
}

SimilarityReport similarity_matrix(const std::vector<AccelSeries>& dataset,
                                   const SchemeConfig& config,
                                   std::uint64_t seed, unsigned workers) {
  std::set<std::string> subjects;
  std::set<std::string> locations;
  for (const auto& s : dataset) {
    s.validate();
    subjects.insert(s.subject_id);
    locations.insert(to_string(s.location));
  }
  if (subjects.size() < 2)
    throw std::invalid_argument("similarity_matrix: need >= 2 subjects");

  std::map<std::pair<std::string, std::string>, const AccelSeries*> lookup;
  for (const auto& s : dataset) {
    auto key = std::make_pair(s.subject_id, to_string(s.location));
    if (lookup.count(key))
      throw std::invalid_argument(
          "similarity_matrix: duplicate (subject, location) recording");
    lookup[key] = &s;
  }

  // Enumerate pairs in a deterministic order: all intra pairs (same subject,
  // location combinations), then all inter pairs (same location, subject
  // combinations).
  struct PairTask {
    const AccelSeries* a;
    const AccelSeries* b;
    bool intra;
  };
  std::vector<PairTask> tasks;
  for (const auto& subj : subjects) {
    std::vector<const AccelSeries*> locs;
    for (const auto& loc : locations) {
      auto it = lookup.find({subj, loc});
      if (it != lookup.end()) locs.push_back(it->second);
    }
    for (std::size_t i = 0; i < locs.size(); ++i)
      for (std::size_t j = i + 1; j < locs.size(); ++j)
        tasks.push_back({locs[i], locs[j], true});
  }
  for (const auto& loc : locations) {
    std::vector<const AccelSeries*> subjs;
    for (const auto& subj : subjects) {
      auto it = lookup.find({subj, loc});
      if (it != lookup.end()) subjs.push_back(it->second);
    }
    for (std::size_t i = 0; i < subjs.size(); ++i)
      for (std::size_t j = i + 1; j < subjs.size(); ++j)
        tasks.push_back({subjs[i], subjs[j], false});
  }

  std::vector<PairRecord> records(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    const auto& task = tasks[i];
    PairRecord rec;
    rec.subject_a = task.a->subject_id;
    rec.location_a = task.a->location;
    rec.subject_b = task.b->subject_id;
    rec.location_b = task.b->location;
    PairResult pr =
        pair_fingerprints(*task.a, *task.b, config, derive_seed(seed, "pair", i));
    if (pr.aborted || pr.fingerprint_a.bits.empty()) {
      rec.aborted = true;
    } else {
      rec.similarity =
          hamming_similarity(pr.fingerprint_a.bits, pr.fingerprint_b.bits);
    }
    records[i] = std::move(rec);
  });

  SimilarityReport report;
  report.scheme = to_string(config.scheme);
  report.seed = seed;
  std::vector<double> intra_vals;
  std::map<std::string, std::vector<double>> inter_vals;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& rec = records[i];
    if (rec.aborted) {
      ++report.aborts;
    } else if (tasks[i].intra) {
      intra_vals.push_back(*rec.similarity);
    } else {
      inter_vals[to_string(rec.location_a)].push_back(*rec.similarity);
    }
  }
  report.records = std::move(records);
  report.intra = dist_stats(std::move(intra_vals));
  for (auto& [loc, vals] : inter_vals)
    report.inter_per_location[loc] = dist_stats(std::move(vals));
  return report;
}

std::vector<int> random_walk(const Bits& bits) {
  if (bits.empty()) throw std::invalid_argument("random_walk: empty input");
  std::vector<int> path(bits.size());
  int pos = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    pos += bits[i] ? 1 : -1;
    path[i] = pos;
  }
  return path;
}

std::vector<double> markov_profile(const std::vector<Bits>& keys) {
  if (keys.empty()) throw std::invalid_argument("markov_profile: no keys");
  const std::size_t len = keys.front().size();
  std::vector<double> profile(len, 0.0);
  for (const auto& key : keys) {
    if (key.size() != len)
      throw std::invalid_argument("markov_profile: length mismatch");
    for (std::size_t i = 0; i < len; ++i) profile[i] += key[i] ? 1.0 : 0.0;
  }
  for (auto& p : profile) p /= static_cast<double>(keys.size());
  return profile;
}

EntReport ent_report(const Bits& stream) {
  if (stream.size() < 96)
    throw std::invalid_argument("ent_report: stream too short (< 96 bits)");
  EntReport rep;

  // Bit-level marginal entropy and mean.
  double ones = 0;
  for (auto b : stream) ones += b ? 1.0 : 0.0;
  double p1 = ones / static_cast<double>(stream.size());
  double p0 = 1.0 - p1;
  auto ent_term = [](double p) { return p > 0 ? -p * std::log2(p) : 0.0; };
  rep.entropy_bits_per_bit = ent_term(p0) + ent_term(p1);
  rep.arithmetic_mean = p1;

  // Byte-level statistics over the packed stream (full bytes only).
  std::vector<std::uint8_t> bytes = pack_bits(stream);
  std::size_t full = stream.size() / 8;
  if (full >= 2) {
    std::array<std::uint64_t, 256> counts{};
    for (std::size_t i = 0; i < full; ++i) ++counts[bytes[i]];
    double expected = static_cast<double>(full) / 256.0;
    double chi = 0;
    for (auto c : counts) {
      double d = static_cast<double>(c) - expected;
      chi += d * d / expected;
    }
    rep.chi_square = chi;

    double sum = 0, sum_sq = 0, sum_lag = 0;
    for (std::size_t i = 0; i < full; ++i) {
      double v = bytes[i];
      sum += v;
      sum_sq += v * v;
      if (i + 1 < full) sum_lag += v * static_cast<double>(bytes[i + 1]);
    }
    double n = static_cast<double>(full - 1);  // number of lag pairs
    double mean = sum / static_cast<double>(full);
    double num = sum_lag / n - mean * mean;
    double den = sum_sq / static_cast<double>(full) - mean * mean;
    rep.serial_correlation = den > 1e-12 ? num / den : 0.0;
  }

  // Monte Carlo pi: 24-bit x / 24-bit y per 48 stream bits.
  const std::size_t n_points = stream.size() / 48;
  std::size_t inside = 0;
  const double scale = static_cast<double>((1u << 24) - 1);
  for (std::size_t p = 0; p < n_points; ++p) {
    std::uint32_t xi = 0, yi = 0;
    const std::size_t base = p * 48;
    for (int b = 0; b < 24; ++b) xi = (xi << 1) | stream[base + b];
    for (int b = 24; b < 48; ++b) yi = (yi << 1) | stream[base + b];
    double x = static_cast<double>(xi) / scale;
    double y = static_cast<double>(yi) / scale;
    if (x * x + y * y <= 1.0) ++inside;
  }
  rep.monte_carlo_pi =
      4.0 * static_cast<double>(inside) / static_cast<double>(n_points);
  return rep;
}

RandomnessReport randomness_report(const std::vector<Bits>& keys) {
  if (keys.empty()) throw std::invalid_argument("randomness_report: no keys");
  const std::size_t len = keys.front().size();
  RandomnessReport rep;
  rep.key_bits = len;
  rep.key_count = keys.size();
  rep.markov = markov_profile(keys);
  rep.heatmap.assign(len, std::vector<std::uint64_t>(2 * len + 1, 0));
  Bits stream;
  stream.reserve(len * keys.size());
  for (const auto& key : keys) {
    if (key.size() != len)
      throw std::invalid_argument("randomness_report: length mismatch");
    std::vector<int> walk = random_walk(key);
    for (std::size_t i = 0; i < len; ++i) {
      rep.heatmap[i][static_cast<std::size_t>(walk[i] + static_cast<int>(len))]++;
    }
    stream.insert(stream.end(), key.begin(), key.end());
  }
  rep.final_distribution = rep.heatmap.back();
  rep.ent = ent_report(stream);
  return rep;
}

std::vector<double> chunk_histogram(const std::vector<Bits>& keys,
                                    unsigned chunk_bits) {
  if (chunk_bits == 0 || chunk_bits > 16)
    throw std::invalid_argument("chunk_histogram: chunk_bits out of range");
  std::vector<double> freq(std::size_t{1} << chunk_bits, 0.0);
  std::size_t total = 0;
  for (const auto& key : keys) {
    if (key.size() % chunk_bits != 0)
      throw std::invalid_argument(
          "chunk_histogram: key length not divisible by chunk size");
    for (std::size_t c = 0; c * chunk_bits < key.size(); ++c) {
      std::size_t pattern = 0;
      for (unsigned b = 0; b < chunk_bits; ++b)
        pattern = (pattern << 1) | key[c * chunk_bits + b];
      freq[pattern] += 1.0;
      ++total;
    }
  }
  if (total == 0) throw std::invalid_argument("chunk_histogram: no chunks");
  for (auto& f : freq) f /= static_cast<double>(total);
  return freq;
}

double chunk_repeat_rate(const std::vector<Bits>& keys, unsigned chunk_bits) {
  if (chunk_bits == 0 || chunk_bits > 16)
    throw std::invalid_argument("chunk_repeat_rate: chunk_bits out of range");
  std::size_t repeats = 0, pairs = 0;
  for (const auto& key : keys) {
    if (key.size() % chunk_bits != 0)
      throw std::invalid_argument(
          "chunk_repeat_rate: key length not divisible by chunk size");
    const std::size_t n_chunks = key.size() / chunk_bits;
    for (std::size_t c = 0; c + 1 < n_chunks; ++c) {
      bool same = true;
      for (unsigned b = 0; b < chunk_bits; ++b) {
        if (key[c * chunk_bits + b] != key[(c + 1) * chunk_bits + b]) {
          same = false;
          break;
        }
      }
      repeats += same ? 1 : 0;
      ++pairs;
    }
  }
  if (pairs == 0) throw std::invalid_argument("chunk_repeat_rate: no pairs");
  return static_cast<double>(repeats) / static_cast<double>(pairs);
}

void export_bits(const std::vector<Bits>& keys,
                 const std::filesystem::path& path) {
  Bits all;
  for (const auto& key : keys) all.insert(all.end(), key.begin(), key.end());
  std::vector<std::uint8_t> bytes = pack_bits(all);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace gaitpair
