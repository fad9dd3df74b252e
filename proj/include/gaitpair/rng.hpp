#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gaitpair {

// Derives an independent substream seed from (seed, label, index). Trial
// loops seed one generator per trial so that results do not depend on
// scheduling or on the worker count.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index = 0);

// mt19937_64 with hand-rolled samplers. The standard <random> distributions
// are implementation-defined, so sampling is done explicitly to keep outputs
// reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Box-Muller; the spare draw is cached.
  double normal(double mu, double sigma);

  // Laplace with standard deviation sigma (scale sigma/sqrt(2)).
  double laplace(double mu, double sigma);

  // Uniform with mean mu and standard deviation sigma
  // (support [mu - sqrt(3) sigma, mu + sqrt(3) sigma]).
  double uniform_sd(double mu, double sigma);

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint8_t bit() { return static_cast<std::uint8_t>(gen_() >> 63); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gaitpair
