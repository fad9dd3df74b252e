#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gaitpair/ingest.hpp"
#include "gaitpair/rng.hpp"

using namespace gaitpair;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "gaitpair_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

double sample_sd(const std::vector<double>& v) {
  double mean = 0;
  for (double x : v) mean += x;
  mean /= v.size();
  double acc = 0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / v.size());
}

}  // namespace

TEST_CASE("load_csv reads well-formed rows") {
  auto p = temp_file("ok.csv");
  write_file(p, "0.00,0,0,9.81\n0.02,0,0,9.79\n");
  AccelSeries s = load_csv(p, 50.0, "s1", Location::waist);
  REQUIRE(s.size() == 2);
  CHECK(s.samples[0].z == doctest::Approx(9.81));
  CHECK(s.samples[1].t == doctest::Approx(0.02));
  CHECK(s.rate_hz == 50.0);
}

TEST_CASE("load_csv detects header rows") {
  auto p = temp_file("header.csv");
  write_file(p, "t,x,y,z\n0.00,0,0,9.81\n0.02,0,0,9.79\n");
  AccelSeries s = load_csv(p, 50.0, "s1", Location::waist);
  CHECK(s.size() == 2);
}

TEST_CASE("load_csv rejects non-monotone timestamps with the row number") {
  auto p = temp_file("bad_order.csv");
  write_file(p, "0.02,0,0,9.81\n0.00,0,0,9.79\n");
  CHECK_THROWS_WITH_AS(load_csv(p, 50.0, "s", Location::waist),
                       doctest::Contains("non-monotone timestamp at row 2"),
                       std::runtime_error);
}

TEST_CASE("load_csv rejects malformed rows and empty files") {
  auto p = temp_file("malformed.csv");
  write_file(p, "0.00,0,0\n");
  CHECK_THROWS_WITH_AS(load_csv(p, 50.0, "s", Location::waist),
                       doctest::Contains("row 1"), std::runtime_error);
  auto q = temp_file("empty.csv");
  write_file(q, "");
  CHECK_THROWS_WITH_AS(load_csv(q, 50.0, "s", Location::waist),
                       doctest::Contains("empty"), std::runtime_error);
  CHECK_THROWS(load_csv(temp_file("does_not_exist.csv"), 50.0, "s",
                        Location::waist));
}

TEST_CASE("ten-minute file at 50 Hz loads 30000 samples") {
  SynthSpec spec;
  spec.cycle_period_s = 1.0;
  spec.n_cycles = 600;  // 10 minutes
  spec.seed = 3;
  AccelSeries s = synth_gait(spec).series;
  REQUIRE(s.size() == 30000);
  auto p = temp_file("ten_minutes.csv");
  save_csv(s, p);

  // Cross-check against the file's own line count.
  std::ifstream in(p);
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 30001);  // header + rows

  AccelSeries back = load_csv(p, 50.0, "s", Location::waist);
  CHECK(back.size() == 30000);
}

TEST_CASE("save/load round trip is exact") {
  SynthSpec spec;
  spec.n_cycles = 5;
  spec.jitter_sd_s = 0.03;
  spec.noise_sd = 0.2;
  spec.seed = 11;
  AccelSeries s = synth_gait(spec).series;
  auto p = temp_file("roundtrip.csv");
  save_csv(s, p);
  AccelSeries back = load_csv(p, s.rate_hz, s.subject_id, s.location);
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.samples[i].t == s.samples[i].t);
    CHECK(back.samples[i].x == s.samples[i].x);
    CHECK(back.samples[i].y == s.samples[i].y);
    CHECK(back.samples[i].z == s.samples[i].z);
  }
  // Re-serialization is byte-identical.
  auto q = temp_file("roundtrip2.csv");
  save_csv(back, q);
  std::ifstream f1(p), f2(q);
  std::string c1((std::istreambuf_iterator<char>(f1)), {});
  std::string c2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(c1 == c2);
}

TEST_CASE("synth_gait single harmonic is a pure sinusoid plus gravity") {
  AccelSeries s = synth_gait(1.0, 12, 50.0, {2.0}, 0.0, 1);
  REQUIRE(s.size() == 600);
  for (std::size_t i = 0; i < s.size(); ++i) {
    double t = static_cast<double>(i) / 50.0;
    CHECK(s.samples[i].z ==
          doctest::Approx(9.81 + 2.0 * std::cos(2.0 * M_PI * t)).epsilon(1e-9));
  }
}

TEST_CASE("synth_gait is deterministic per seed") {
  AccelSeries a = synth_gait(1.0, 20, 50.0, {2.0, 0.8}, 0.03, 7);
  AccelSeries b = synth_gait(1.0, 20, 50.0, {2.0, 0.8}, 0.03, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.samples[i].z == b.samples[i].z);
    CHECK(a.samples[i].x == b.samples[i].x);
  }
  AccelSeries c = synth_gait(1.0, 20, 50.0, {2.0, 0.8}, 0.03, 8);
  bool differs = false;
  for (std::size_t i = 0; i < a.size() && i < c.size(); ++i) {
    if (a.samples[i].z != c.samples[i].z) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("synth_gait period jitter has the requested standard deviation") {
  SynthSpec spec;
  spec.n_cycles = 1000;
  spec.jitter_sd_s = 0.0408;
  spec.seed = 21;
  SynthGait g = synth_gait(spec);
  REQUIRE(g.periods.size() == 1000);
  std::vector<double> p = g.periods;
  double sd = sample_sd(p);
  CHECK(sd == doctest::Approx(0.0408).epsilon(0.10));
}

TEST_CASE("synth_gait length stays near n_cycles * period * rate") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    SynthSpec spec;
    spec.n_cycles = 100;
    spec.jitter_sd_s = 0.02;
    spec.seed = seed;
    AccelSeries s = synth_gait(spec).series;
    double expected = 100.0 * 1.0 * 50.0;
    CHECK(std::abs(static_cast<double>(s.size()) - expected) <= 100.0);
  }
}

TEST_CASE("synth_gait validates parameters") {
  CHECK_THROWS(synth_gait(0.0, 10, 50.0, {2.0}, 0.0, 1));
  CHECK_THROWS(synth_gait(1.0, 0, 50.0, {2.0}, 0.0, 1));
  CHECK_THROWS(synth_gait(1.0, 10, 1.0, {2.0}, 0.0, 1));  // rate too low
}

TEST_CASE("add_noise degenerate sigma leaves the series unchanged") {
  AccelSeries s = synth_gait(1.0, 5, 50.0, {2.0}, 0.0, 1);
  NoiseModel m;
  m.mu = 0.0;
  m.sigma = 1e-9;
  AccelSeries noisy = add_noise(s, m, 9);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(std::abs(noisy.samples[i].z - s.samples[i].z) < 1e-6);
    CHECK(noisy.samples[i].t == s.samples[i].t);
  }
}

TEST_CASE("add_noise gaussian video level matches the fitted parameters") {
  SynthSpec spec;
  spec.n_cycles = 667;  // > 1e5 samples / 3 axes
  spec.seed = 5;
  AccelSeries s = synth_gait(spec).series;
  REQUIRE(s.size() * 3 >= 100000);
  NoiseModel m;  // defaults: gaussian, video level, fitted mu/sigma
  AccelSeries noisy = add_noise(s, m, 13);
  std::vector<double> deltas;
  deltas.reserve(s.size() * 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    deltas.push_back(noisy.samples[i].x - s.samples[i].x);
    deltas.push_back(noisy.samples[i].y - s.samples[i].y);
    deltas.push_back(noisy.samples[i].z - s.samples[i].z);
  }
  double mean = 0;
  for (double d : deltas) mean += d;
  mean /= deltas.size();
  double sd = sample_sd(deltas);
  CHECK(mean > 1.9);
  CHECK(mean < 2.3);
  CHECK(sd > 5.8);
  CHECK(sd < 6.3);
}

TEST_CASE("add_noise level scaling") {
  NoiseModel m;
  m.level = NoiseLevel::low;
  CHECK(m.scaled_mu() == doctest::Approx(kVideoNoiseMu / 2));
  CHECK(m.scaled_sigma() == doctest::Approx(kVideoNoiseSigma / 2));
  m.level = NoiseLevel::high;
  CHECK(m.scaled_mu() == doctest::Approx(2 * kVideoNoiseMu));
  CHECK(m.scaled_sigma() == doctest::Approx(2 * kVideoNoiseSigma));
}

TEST_CASE("add_noise uniform family is flat over its support") {
  SynthSpec spec;
  spec.n_cycles = 667;
  spec.seed = 6;
  AccelSeries s = synth_gait(spec).series;
  NoiseModel m;
  m.family = NoiseFamily::uniform;
  m.mu = 1.0;
  m.sigma = 2.0;
  m.level = NoiseLevel::video;
  AccelSeries noisy = add_noise(s, m, 17);
  std::vector<double> deltas;
  for (std::size_t i = 0; i < s.size(); ++i) {
    deltas.push_back(noisy.samples[i].x - s.samples[i].x);
    deltas.push_back(noisy.samples[i].y - s.samples[i].y);
    deltas.push_back(noisy.samples[i].z - s.samples[i].z);
  }
  REQUIRE(deltas.size() >= 100000);
  // Kolmogorov-Smirnov against the closed-form uniform CDF on
  // [mu - sqrt(3) sigma, mu + sqrt(3) sigma].
  std::sort(deltas.begin(), deltas.end());
  double lo = 1.0 - std::sqrt(3.0) * 2.0;
  double hi = 1.0 + std::sqrt(3.0) * 2.0;
  double ks = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    double f_theory = std::clamp((deltas[i] - lo) / (hi - lo), 0.0, 1.0);
    double f_lo = static_cast<double>(i) / deltas.size();
    double f_hi = static_cast<double>(i + 1) / deltas.size();
    ks = std::max({ks, std::abs(f_theory - f_lo), std::abs(f_theory - f_hi)});
  }
  CHECK(ks < 0.02);
}

TEST_CASE("add_noise is a pure function of (inputs, seed)") {
  AccelSeries s = synth_gait(1.0, 5, 50.0, {2.0}, 0.0, 1);
  NoiseModel m;
  AccelSeries n1 = add_noise(s, m, 99);
  AccelSeries n2 = add_noise(s, m, 99);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(n1.samples[i].x == n2.samples[i].x);
    CHECK(n1.samples[i].y == n2.samples[i].y);
    CHECK(n1.samples[i].z == n2.samples[i].z);
  }
}

TEST_CASE("add_noise empirical mean concentrates for every family") {
  SynthSpec spec;
  spec.n_cycles = 667;
  spec.seed = 8;
  AccelSeries s = synth_gait(spec).series;
  for (NoiseFamily fam :
       {NoiseFamily::gaussian, NoiseFamily::laplacian, NoiseFamily::uniform}) {
    NoiseModel m;
    m.family = fam;
    m.mu = 0.7;
    m.sigma = 1.5;
    AccelSeries noisy = add_noise(s, m, 23);
    double mean = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      mean += noisy.samples[i].x - s.samples[i].x;
      mean += noisy.samples[i].y - s.samples[i].y;
      mean += noisy.samples[i].z - s.samples[i].z;
      n += 3;
    }
    mean /= n;
    double bound = 3.0 * 1.5 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean - 0.7) < bound);
  }
}

TEST_CASE("synth_ipi_ms matches the requested marginal moments") {
  auto ipi = synth_ipi_ms(1000.0, 40.8, 5000, 31);
  double mean = 0;
  for (double v : ipi) mean += v;
  mean /= ipi.size();
  CHECK(mean == doctest::Approx(1000.0).epsilon(0.01));
  CHECK(sample_sd(ipi) == doctest::Approx(40.8).epsilon(0.15));
}

TEST_CASE("strikes_from_ipis accumulates times") {
  HeelStrikes s = strikes_from_ipis({1000.0, 980.0, 1020.0});
  REQUIRE(s.size() == 4);
  CHECK(s.times_s[0] == doctest::Approx(0.0));
  CHECK(s.times_s[1] == doctest::Approx(1.0));
  CHECK(s.times_s[2] == doctest::Approx(1.98));
  CHECK(s.times_s[3] == doctest::Approx(3.0));
  CHECK(s.kind[0] == Foot::unknown);
  CHECK(s.kind[1] == Foot::unknown);
  CHECK(s.kind[2] == Foot::left);
  CHECK(s.kind[3] == Foot::right);
}
