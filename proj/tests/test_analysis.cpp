#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gaitpair/analysis.hpp"
#include "gaitpair/ingest.hpp"
#include "gaitpair/rng.hpp"

using namespace gaitpair;

namespace {

Bits random_bits(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Bits b(n);
  for (auto& x : b) x = rng.bit();
  return b;
}

}  // namespace

TEST_CASE("random_walk paths") {
  CHECK(random_walk(bits_from_string("1111")) == std::vector<int>{1, 2, 3, 4});
  CHECK(random_walk(bits_from_string("1010")) == std::vector<int>{1, 0, 1, 0});
  CHECK_THROWS(random_walk(Bits{}));

  Bits b = random_bits(257, 3);
  auto path = random_walk(b);
  int prev = 0;
  std::size_t ones = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(std::abs(path[i] - prev) == 1);
    prev = path[i];
    ones += b[i];
  }
  CHECK(path.back() == static_cast<int>(2 * ones) - static_cast<int>(b.size()));
  CHECK(std::abs(path.back()) <= static_cast<int>(b.size()));
}

TEST_CASE("markov_profile basics") {
  std::vector<Bits> ones(5, bits_from_string("111"));
  for (double p : markov_profile(ones)) CHECK(p == doctest::Approx(1.0));

  std::vector<Bits> mixed = {bits_from_string("00"), bits_from_string("11")};
  auto prof = markov_profile(mixed);
  CHECK(prof[0] == doctest::Approx(0.5));
  CHECK(prof[1] == doctest::Approx(0.5));

  CHECK_THROWS(markov_profile({bits_from_string("0"), bits_from_string("01")}));
}

TEST_CASE("markov_profile concentrates for fair keys") {
  std::vector<Bits> keys;
  keys.reserve(10000);
  for (std::size_t i = 0; i < 10000; ++i) keys.push_back(random_bits(128, 1000 + i));
  auto prof = markov_profile(keys);
  for (double p : prof) {
    CHECK(p > 0.45);
    CHECK(p < 0.55);
  }
}

TEST_CASE("markov_profile of a union is the weighted mean of the parts") {
  std::vector<Bits> part_a, part_b;
  for (std::size_t i = 0; i < 30; ++i) part_a.push_back(random_bits(64, 50 + i));
  for (std::size_t i = 0; i < 70; ++i) part_b.push_back(random_bits(64, 900 + i));
  std::vector<Bits> all = part_a;
  all.insert(all.end(), part_b.begin(), part_b.end());
  auto pa = markov_profile(part_a);
  auto pb = markov_profile(part_b);
  auto pu = markov_profile(all);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(pu[i] == doctest::Approx(0.3 * pa[i] + 0.7 * pb[i]).epsilon(1e-12));
  }
}

TEST_CASE("ent_report on degenerate streams") {
  Bits alternating;
  for (std::size_t i = 0; i < 4096; ++i) alternating.push_back(i % 2);
  EntReport rep = ent_report(alternating);
  CHECK(rep.entropy_bits_per_bit == doctest::Approx(1.0));
  CHECK(rep.arithmetic_mean == doctest::Approx(0.5));
  CHECK(std::isfinite(rep.serial_correlation));

  Bits zeros(4096, 0);
  EntReport zrep = ent_report(zeros);
  CHECK(zrep.entropy_bits_per_bit == doctest::Approx(0.0));
  CHECK(zrep.arithmetic_mean == doctest::Approx(0.0));

  CHECK_THROWS(ent_report(Bits(95, 0)));  // too short for the pi estimate
}

TEST_CASE("ent_report on a known-good generator") {
  Bits stream = random_bits(1000000, 424242);
  EntReport rep = ent_report(stream);
  CHECK(rep.entropy_bits_per_bit >= 0.9999);
  CHECK(rep.arithmetic_mean > 0.498);
  CHECK(rep.arithmetic_mean < 0.502);
  CHECK(std::abs(rep.serial_correlation) < 0.01);
  CHECK(std::abs(rep.monte_carlo_pi - M_PI) < 0.1);
  // Byte chi-square should be near its 255-dof expectation, not degenerate.
  CHECK(rep.chi_square > 150.0);
  CHECK(rep.chi_square < 400.0);
}

TEST_CASE("ent entropy is maximal only for a fair marginal") {
  Bits biased;
  for (std::size_t i = 0; i < 4096; ++i) biased.push_back(i % 4 == 0 ? 1 : 0);
  EntReport rep = ent_report(biased);
  CHECK(rep.entropy_bits_per_bit < 1.0);
  CHECK(rep.entropy_bits_per_bit ==
        doctest::Approx(-0.25 * std::log2(0.25) - 0.75 * std::log2(0.75)));
}

TEST_CASE("chunk_histogram basics") {
  std::vector<Bits> zero_keys(3, Bits(16, 0));
  auto hist = chunk_histogram(zero_keys, 4);
  CHECK(hist[0] == doctest::Approx(1.0));
  for (std::size_t p = 1; p < 16; ++p) CHECK(hist[p] == doctest::Approx(0.0));

  std::vector<Bits> keys;
  for (std::size_t i = 0; i < 10; ++i) keys.push_back(random_bits(64, 7000 + i));
  auto h = chunk_histogram(keys, 4);
  double sum = 0;
  for (double f : h) sum += f;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // Invariant under key reordering.
  std::vector<Bits> shuffled = {keys[5], keys[2], keys[9], keys[0], keys[1],
                                keys[3], keys[4], keys[6], keys[7], keys[8]};
  CHECK(chunk_histogram(shuffled, 4) == h);

  CHECK_THROWS(chunk_histogram({bits_from_string("001")}, 4));
}

TEST_CASE("chunk_repeat_rate basics") {
  CHECK(chunk_repeat_rate({Bits(32, 0)}, 4) == doctest::Approx(1.0));
  Bits abab;
  for (int i = 0; i < 4; ++i) {
    Bits a = bits_from_string("0011");
    Bits b = bits_from_string("1100");
    abab.insert(abab.end(), a.begin(), a.end());
    abab.insert(abab.end(), b.begin(), b.end());
  }
  CHECK(chunk_repeat_rate({abab}, 4) == doctest::Approx(0.0));
}

TEST_CASE("export_bits packs MSB-first") {
  auto dir = std::filesystem::temp_directory_path() / "gaitpair_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / "export.bin";
  export_bits({bits_from_string("11111111"), bits_from_string("00000000")},
              path);
  std::ifstream in(path, std::ios::binary);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), {});
  REQUIRE(bytes.size() == 2);
  CHECK(bytes[0] == 0xFF);
  CHECK(bytes[1] == 0x00);

  auto empty_path = dir / "empty.bin";
  export_bits({}, empty_path);
  CHECK(std::filesystem::file_size(empty_path) == 0);

  // Round trip through the unpacking oracle.
  Bits payload = random_bits(123, 99);
  auto rt = dir / "roundtrip.bin";
  export_bits({payload}, rt);
  std::ifstream in2(rt, std::ios::binary);
  std::vector<std::uint8_t> packed((std::istreambuf_iterator<char>(in2)), {});
  CHECK(unpack_bits(packed, 123) == payload);
}

TEST_CASE("randomness_report aggregates walks") {
  std::vector<Bits> keys;
  for (std::size_t i = 0; i < 50; ++i) keys.push_back(random_bits(128, 300 + i));
  RandomnessReport rep = randomness_report(keys);
  CHECK(rep.key_bits == 128);
  CHECK(rep.key_count == 50);
  REQUIRE(rep.heatmap.size() == 128);
  for (const auto& row : rep.heatmap) {
    std::uint64_t sum = 0;
    for (auto c : row) sum += c;
    CHECK(sum == 50);  // every key contributes one displacement per row
  }
  CHECK(rep.final_distribution == rep.heatmap.back());
  CHECK(rep.markov.size() == 128);
}

TEST_CASE("similarity_matrix on identical copies gives intra 1.0") {
  SynthSpec spec;
  spec.n_cycles = 30;
  spec.jitter_sd_s = 0.02;
  spec.phase_jitter_sd = 0.3;
  spec.noise_sd = 0.1;
  spec.seed = 15;
  AccelSeries base = synth_gait(spec).series;
  std::vector<AccelSeries> dataset;
  for (const char* subj : {"s0", "s1"}) {
    for (Location loc : {Location::waist, Location::shin}) {
      AccelSeries copy = base;
      copy.subject_id = subj;
      copy.location = loc;
      dataset.push_back(std::move(copy));
    }
  }
  SchemeConfig config;
  config.scheme = Scheme::saphe;
  SimilarityReport rep = similarity_matrix(dataset, config, 5);
  CHECK(rep.aborts == 0);
  CHECK(rep.intra.n == 2);
  CHECK(rep.intra.mean == doctest::Approx(1.0));
  CHECK(rep.intra.min == doctest::Approx(1.0));
}

TEST_CASE("similarity_matrix inter-body is near chance for SAPHE") {
  CorpusSpec corpus;
  corpus.n_subjects = 15;
  corpus.locations = {Location::waist, Location::shin};
  corpus.n_cycles = 40;
  // Strong impacts spread the signal across the full +-1g threshold range,
  // the regime the scheme sees on real lower-body recordings.
  corpus.harmonics = {22.0, 11.0, 4.4};
  corpus.location_noise_sd = 0.3;
  corpus.vary_location_scale = false;
  corpus.seed = 77;
  std::vector<AccelSeries> dataset = make_corpus(corpus);

  SchemeConfig config;
  config.scheme = Scheme::saphe;
  config.saphe.n_thresholds = 64;  // 128-bit pair keys
  SimilarityReport rep = similarity_matrix(dataset, config, 9, 4);

  std::size_t inter_pairs = 0;
  double inter_mean = 0;
  for (const auto& [loc, st] : rep.inter_per_location) {
    inter_pairs += st.n;
    inter_mean += st.mean * static_cast<double>(st.n);
  }
  inter_mean /= static_cast<double>(inter_pairs);
  CHECK(inter_pairs >= 100);
  CHECK(inter_mean > 0.45);
  CHECK(inter_mean < 0.55);
}

TEST_CASE("similarity_matrix separates intra from inter for BANDANA") {
  CorpusSpec corpus;
  corpus.n_subjects = 3;
  corpus.locations = {Location::waist, Location::shin, Location::thigh};
  corpus.n_cycles = 60;
  corpus.location_noise_sd = 0.5;
  corpus.seed = 21;
  std::vector<AccelSeries> dataset = make_corpus(corpus);

  SchemeConfig config;
  config.scheme = Scheme::bandana;
  SimilarityReport rep = similarity_matrix(dataset, config, 31, 2);
  REQUIRE(rep.intra.n > 0);
  double inter_mean = 0;
  std::size_t n = 0;
  for (const auto& [loc, st] : rep.inter_per_location) {
    inter_mean += st.mean * static_cast<double>(st.n);
    n += st.n;
  }
  REQUIRE(n > 0);
  inter_mean /= static_cast<double>(n);
  CHECK(rep.intra.mean - inter_mean >= 0.15);
}

TEST_CASE("similarity_matrix is worker-count invariant") {
  CorpusSpec corpus;
  corpus.n_subjects = 3;
  corpus.locations = {Location::waist, Location::shin};
  corpus.n_cycles = 25;
  corpus.seed = 4;
  std::vector<AccelSeries> dataset = make_corpus(corpus);
  SchemeConfig config;
  config.scheme = Scheme::saphe;
  SimilarityReport r1 = similarity_matrix(dataset, config, 11, 1);
  SimilarityReport r4 = similarity_matrix(dataset, config, 11, 4);
  REQUIRE(r1.records.size() == r4.records.size());
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    CHECK(r1.records[i].similarity == r4.records[i].similarity);
  }
}

TEST_CASE("dist_stats computes order statistics") {
  DistStats st = dist_stats({3.0, 1.0, 2.0, 4.0});
  CHECK(st.n == 4);
  CHECK(st.mean == doctest::Approx(2.5));
  CHECK(st.median == doctest::Approx(2.5));
  CHECK(st.min == doctest::Approx(1.0));
  CHECK(st.max == doctest::Approx(4.0));
}
