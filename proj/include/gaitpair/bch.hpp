#pragma once

#include <optional>
#include <vector>

#include "gaitpair/bits.hpp"

namespace gaitpair {

struct CodeParams {
  unsigned n = 31;  // codeword bits, 2^m - 1
  unsigned k = 16;  // information bits
  unsigned t = 3;   // guaranteed correctable errors
};

// Binary primitive BCH codec over GF(2^m). The constructor derives the
// generator polynomial from the cyclotomic cosets of alpha^1..alpha^2t and
// rejects (n,k,t) triples it cannot realize (wrong n, or deg g != n - k).
class BchCode {
 public:
  explicit BchCode(const CodeParams& params);

  // Systematic encoding: codeword = [parity (n-k) | message (k)].
  Bits encode(const Bits& message) const;

  // Syndrome computation, Berlekamp-Massey, Chien search. Returns the
  // decoded message, or nullopt when the error pattern is uncorrectable.
  // Guaranteed to invert up to t bit flips.
  std::optional<Bits> decode(const Bits& word) const;

  const CodeParams& params() const { return params_; }

 private:
  int gf_mul(int a, int b) const;
  int poly_eval(const std::vector<int>& poly, int alpha_power) const;

  CodeParams params_;
  unsigned m_ = 0;                // field degree, n = 2^m - 1
  std::vector<int> alpha_to_;     // antilog table
  std::vector<int> index_of_;     // log table (-1 for 0)
  Bits genpoly_;                  // generator coefficients, degree n - k
};

}  // namespace gaitpair
