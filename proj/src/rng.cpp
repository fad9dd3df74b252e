#include "gaitpair/rng.hpp"

#include <cmath>

namespace gaitpair {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ fnv1a(label)) ^ index);
}

double Rng::normal(double mu, double sigma) {
  if (has_spare_) {
    has_spare_ = false;
    return mu + sigma * spare_;
  }
  double u1, u2;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return mu + sigma * r * std::cos(theta);
}

double Rng::laplace(double mu, double sigma) {
  double b = sigma / std::sqrt(2.0);
  double u = uniform01() - 0.5;
  double mag = -b * std::log(1.0 - 2.0 * std::fabs(u));
  return u >= 0 ? mu + mag : mu - mag;
}

double Rng::uniform_sd(double mu, double sigma) {
  double half = std::sqrt(3.0) * sigma;
  return uniform(mu - half, mu + half);
}

}  // namespace gaitpair
