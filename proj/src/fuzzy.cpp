#include "gaitpair/fuzzy.hpp"

#include <stdexcept>

#include "gaitpair/rng.hpp"

namespace gaitpair {

std::pair<FuzzySketch, Bits> commit(const Bits& fingerprint,
                                    const CodeParams& code,
                                    std::uint64_t seed) {
  BchCode codec(code);
  if (fingerprint.size() != code.n)
    throw std::invalid_argument("commit: fingerprint must have n bits");
  Rng rng(derive_seed(seed, "fuzzy-key"));
  Bits key(code.k);
  for (auto& b : key) b = rng.bit();
  FuzzySketch sketch;
  sketch.code = code;
  sketch.helper = xor_bits(fingerprint, codec.encode(key));
  sketch.key_digest = sha256(pack_bits(key));
  return {std::move(sketch), std::move(key)};
}

std::optional<Bits> decommit(const FuzzySketch& sketch,
                             const Bits& fingerprint2) {
  if (fingerprint2.size() != sketch.code.n)
    throw std::invalid_argument("decommit: fingerprint must have n bits");
  BchCode codec(sketch.code);
  std::optional<Bits> key = codec.decode(xor_bits(sketch.helper, fingerprint2));
  if (!key) return std::nullopt;
  if (sha256(pack_bits(*key)) != sketch.key_digest) return std::nullopt;
  return key;
}

BinomialTail adversary_success(unsigned n, unsigned u) {
  if (u > n) throw std::invalid_argument("adversary_success: u > n");
  mpz_class sum = 0;
  mpz_class binom;
  for (unsigned i = 0; i <= u; ++i) {
    mpz_bin_uiui(binom.get_mpz_t(), n, i);
    sum += binom;
  }
  mpz_class denom = mpz_class(1) << n;
  mpq_class q(sum, denom);
  q.canonicalize();
  BinomialTail tail;
  tail.numerator = q.get_num();
  tail.denominator = q.get_den();
  tail.value = q.get_d();
  return tail;
}

bool pake_stub(const Bits& key_a, const Bits& key_b) {
  if (key_a.size() != key_b.size())
    throw std::invalid_argument("pake_stub: length mismatch");
  return key_a == key_b;
}

}  // namespace gaitpair
