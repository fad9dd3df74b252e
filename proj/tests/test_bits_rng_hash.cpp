#include <doctest.h>

#include <cmath>

#include "gaitpair/bits.hpp"
#include "gaitpair/hash.hpp"
#include "gaitpair/rng.hpp"

using namespace gaitpair;

TEST_CASE("pack_bits is MSB-first with zero padding") {
  Bits bits = bits_from_string("1111111100000000");
  auto bytes = pack_bits(bits);
  REQUIRE(bytes.size() == 2);
  CHECK(bytes[0] == 0xFF);
  CHECK(bytes[1] == 0x00);

  Bits odd = bits_from_string("101");
  auto packed = pack_bits(odd);
  REQUIRE(packed.size() == 1);
  CHECK(packed[0] == 0b10100000);
}

TEST_CASE("pack/unpack round trip") {
  Rng rng(42);
  for (std::size_t len : {1u, 7u, 8u, 9u, 63u, 200u}) {
    Bits bits(len);
    for (auto& b : bits) b = rng.bit();
    CHECK(unpack_bits(pack_bits(bits), len) == bits);
  }
}

TEST_CASE("hamming similarity basics") {
  Bits x = bits_from_string("0011");
  CHECK(hamming_similarity(x, x) == doctest::Approx(1.0));
  Bits nx = bits_from_string("1100");
  CHECK(hamming_similarity(x, nx) == doctest::Approx(0.0));
  CHECK(hamming_similarity(bits_from_string("0011"), bits_from_string("0010")) ==
        doctest::Approx(0.75));
  CHECK_THROWS(hamming_similarity(x, bits_from_string("01")));
  CHECK_THROWS(hamming_similarity(Bits{}, Bits{}));
  // Symmetry and the distance identity.
  Rng rng(7);
  Bits a(64), b(64);
  for (std::size_t i = 0; i < 64; ++i) {
    a[i] = rng.bit();
    b[i] = rng.bit();
  }
  CHECK(hamming_similarity(a, b) == doctest::Approx(hamming_similarity(b, a)));
  CHECK(hamming_similarity(a, b) ==
        doctest::Approx(1.0 - static_cast<double>(hamming_distance(a, b)) / 64.0));
}

TEST_CASE("gray code adjacency") {
  for (std::uint32_t v = 0; v + 1 < 16; ++v) {
    CHECK(__builtin_popcount(gray_code(v) ^ gray_code(v + 1)) == 1);
  }
}

TEST_CASE("derive_seed separates labels and indices") {
  CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
  CHECK(derive_seed(1, "a", 0) != derive_seed(1, "a", 1));
  CHECK(derive_seed(1, "a", 5) == derive_seed(1, "a", 5));
}

TEST_CASE("rng samplers hit their moments") {
  Rng rng(123);
  const std::size_t n = 200000;
  double sum = 0, sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = rng.normal(2.0, 3.0);
    sum += v;
    sq += v * v;
  }
  double mean = sum / n;
  double sd = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean - 2.0) < 0.05);
  CHECK(std::abs(sd - 3.0) < 0.05);

  sum = sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = rng.laplace(-1.0, 2.0);
    sum += v;
    sq += v * v;
  }
  mean = sum / n;
  sd = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean + 1.0) < 0.05);
  CHECK(std::abs(sd - 2.0) < 0.05);

  double lo = 1e9, hi = -1e9;
  for (std::size_t i = 0; i < n; ++i) {
    double v = rng.uniform_sd(5.0, 1.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= 5.0 - std::sqrt(3.0) - 1e-9);
  CHECK(hi <= 5.0 + std::sqrt(3.0) + 1e-9);
}

TEST_CASE("sha256 known vector") {
  // SHA-256 of the empty string.
  Digest d = sha256(nullptr, 0);
  CHECK(hex(d) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Digest abc = sha256("abc", 3);
  CHECK(hex(abc) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
