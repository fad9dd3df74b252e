#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>

#include "gaitpair/bch.hpp"
#include "gaitpair/bits.hpp"
#include "gaitpair/hash.hpp"

namespace gaitpair {

// Public helper data binding a random key to a fingerprint via a codeword
// offset. Reveals nothing testable about the key without a close
// fingerprint.
struct FuzzySketch {
  Bits helper;  // fingerprint XOR encode(key), n bits
  CodeParams code;
  Digest key_digest{};  // SHA-256 of the packed key
};

// Draws a uniform k-bit key from the seed and binds it to the fingerprint.
// Throws when |fingerprint| != code.n.
std::pair<FuzzySketch, Bits> commit(const Bits& fingerprint,
                                    const CodeParams& code,
                                    std::uint64_t seed);

// decode(helper XOR fingerprint2); succeeds iff the decoded key matches the
// committed digest. Guaranteed to succeed when
// Hamming(fingerprint, fingerprint2) <= t.
std::optional<Bits> decommit(const FuzzySketch& sketch,
                             const Bits& fingerprint2);

// Exact adversary success probability sum_{k=0}^{u} C(n,k) / 2^n.
struct BinomialTail {
  mpz_class numerator;    // reduced
  mpz_class denominator;  // reduced
  double value = 0;       // floating approximation
};

BinomialTail adversary_success(unsigned n, unsigned u);

// Placeholder modeling PAKE success iff the keys are bit-identical.
// Explicitly NOT a cryptographic implementation. Throws on length mismatch.
bool pake_stub(const Bits& key_a, const Bits& key_b);

}  // namespace gaitpair
