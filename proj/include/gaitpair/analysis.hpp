#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaitpair/accel.hpp"
#include "gaitpair/bits.hpp"
#include "gaitpair/quantizers.hpp"

namespace gaitpair {

struct DistStats {
  std::size_t n = 0;
  double mean = 0;
  double sd = 0;
  double min = 0;
  double median = 0;
  double max = 0;
};

DistStats dist_stats(std::vector<double> values);

struct PairRecord {
  std::string subject_a;
  Location location_a;
  std::string subject_b;
  Location location_b;
  std::optional<double> similarity;  // empty when the pairing aborted
  bool aborted = false;
};

// Intra pairs share the subject across different locations; inter pairs
// share the location across different subjects.
struct SimilarityReport {
  std::string scheme;
  std::uint64_t seed = 0;
  std::vector<PairRecord> records;
  DistStats intra;
  std::map<std::string, DistStats> inter_per_location;
  std::size_t aborts = 0;
};

// Quantizes every (subject, location) recording pairwise over the common
// time span and aggregates intra-/inter-body similarity. Aborted pairs are
// recorded and excluded from the aggregates.
SimilarityReport similarity_matrix(const std::vector<AccelSeries>& dataset,
                                   const SchemeConfig& config,
                                   std::uint64_t seed, unsigned workers = 1);

// Galton-board walk: path[i] = (#ones - #zeros) among the first i+1 bits.
std::vector<int> random_walk(const Bits& bits);

// profile[i] = fraction of keys with bit i set. Keys must share one length.
std::vector<double> markov_profile(const std::vector<Bits>& keys);

struct EntReport {
  double entropy_bits_per_bit = 0;
  double chi_square = 0;        // byte frequencies vs uniform, 256 cells
  double arithmetic_mean = 0;   // bit-level mean (random = .5)
  double monte_carlo_pi = 0;    // 24-bit x / 24-bit y points per 48 bits
  double serial_correlation = 0;  // lag-1 over packed bytes
};

// Throws when the stream is shorter than 96 bits (no pi estimate possible).
EntReport ent_report(const Bits& stream);

struct RandomnessReport {
  std::string scheme;
  std::uint64_t seed = 0;
  std::size_t key_bits = 0;
  std::size_t key_count = 0;
  // heatmap[pos][disp + key_bits] = number of walks at displacement disp
  // after pos+1 bits. Row sums equal key_count.
  std::vector<std::vector<std::uint64_t>> heatmap;
  std::vector<std::uint64_t> final_distribution;  // last heatmap row
  std::vector<double> markov;
  EntReport ent;
};

RandomnessReport randomness_report(const std::vector<Bits>& keys);

// Relative frequency of every chunk_bits-wide pattern across all keys.
// Key lengths must be divisible by chunk_bits; chunk_bits <= 16.
std::vector<double> chunk_histogram(const std::vector<Bits>& keys,
                                    unsigned chunk_bits);

// Fraction of adjacent chunk pairs (within each key) that are identical.
double chunk_repeat_rate(const std::vector<Bits>& keys, unsigned chunk_bits);

// Concatenates all keys and writes the packed bytes.
void export_bits(const std::vector<Bits>& keys,
                 const std::filesystem::path& path);

}  // namespace gaitpair
