#include "gaitpair/bch.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gaitpair {

namespace {

// Primitive polynomial coefficients p[0..m] for GF(2^m).
const int* primitive_poly(unsigned m) {
  static const int p3[] = {1, 1, 0, 1};
  static const int p4[] = {1, 1, 0, 0, 1};
  static const int p5[] = {1, 0, 1, 0, 0, 1};
  static const int p6[] = {1, 1, 0, 0, 0, 0, 1};
  static const int p7[] = {1, 0, 0, 1, 0, 0, 0, 1};
  static const int p8[] = {1, 0, 1, 1, 1, 0, 0, 0, 1};
  static const int p9[] = {1, 0, 0, 0, 1, 0, 0, 0, 0, 1};
  static const int p10[] = {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1};
  switch (m) {
    case 3: return p3;
    case 4: return p4;
    case 5: return p5;
    case 6: return p6;
    case 7: return p7;
    case 8: return p8;
    case 9: return p9;
    case 10: return p10;
  }
  return nullptr;
}

}  // namespace

BchCode::BchCode(const CodeParams& params) : params_(params) {
  const unsigned n = params.n;
  // n must be 2^m - 1.
  unsigned m = 0;
  for (unsigned cand = 3; cand <= 10; ++cand) {
    if (n == (1u << cand) - 1) {
      m = cand;
      break;
    }
  }
  if (m == 0)
    throw std::invalid_argument("bch: n must be 2^m - 1 with 3 <= m <= 10");
  if (params.k > n) throw std::invalid_argument("bch: k > n");
  m_ = m;

  // Galois field tables.
  const int* p = primitive_poly(m);
  alpha_to_.assign(n + 1, 0);
  index_of_.assign(n + 1, -1);
  int mask = 1;
  alpha_to_[m] = 0;
  for (unsigned i = 0; i < m; ++i) {
    alpha_to_[i] = mask;
    index_of_[mask] = static_cast<int>(i);
    if (p[i]) alpha_to_[m] ^= mask;
    mask <<= 1;
  }
  index_of_[alpha_to_[m]] = static_cast<int>(m);
  mask >>= 1;
  for (unsigned i = m + 1; i < n; ++i) {
    if (alpha_to_[i - 1] >= mask)
      alpha_to_[i] = alpha_to_[m] ^ ((alpha_to_[i - 1] ^ mask) << 1);
    else
      alpha_to_[i] = alpha_to_[i - 1] << 1;
    index_of_[alpha_to_[i]] = static_cast<int>(i);
  }
  index_of_[0] = -1;

  // Generator polynomial: product of the minimal polynomials of
  // alpha^1 .. alpha^2t (one per cyclotomic coset).
  genpoly_ = {1};
  if (params.t > 0) {
    std::vector<bool> seen(n + 1, false);
    for (unsigned i = 1; i <= 2 * params.t; ++i) {
      if (seen[i]) continue;
      std::vector<unsigned> coset;
      unsigned j = i;
      do {
        coset.push_back(j);
        seen[j] = true;
        j = (j * 2) % n;
      } while (j != i);

      // Minimal polynomial over GF(2^m): prod (x + alpha^j).
      std::vector<int> mp = {1};  // coefficients, index = degree
      for (unsigned e : coset) {
        std::vector<int> next(mp.size() + 1, 0);
        int a = alpha_to_[e % n];
        for (std::size_t d = 0; d < mp.size(); ++d) {
          next[d + 1] ^= mp[d];
          next[d] ^= gf_mul(mp[d], a);
        }
        mp = std::move(next);
      }
      Bits mp2(mp.size());
      for (std::size_t d = 0; d < mp.size(); ++d) {
        if (mp[d] != 0 && mp[d] != 1)
          throw std::logic_error("bch: minimal polynomial not binary");
        mp2[d] = static_cast<std::uint8_t>(mp[d]);
      }
      // genpoly *= mp (XOR convolution over GF(2)).
      Bits prod(genpoly_.size() + mp2.size() - 1, 0);
      for (std::size_t x = 0; x < genpoly_.size(); ++x) {
        if (!genpoly_[x]) continue;
        for (std::size_t y = 0; y < mp2.size(); ++y) prod[x + y] ^= mp2[y];
      }
      genpoly_ = std::move(prod);
    }
  }
  if (genpoly_.size() - 1 != n - params.k)
    throw std::invalid_argument(
        "bch: (n,k,t) not realizable; generator degree is " +
        std::to_string(genpoly_.size() - 1) + ", expected " +
        std::to_string(n - params.k));
}

int BchCode::gf_mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  const int n = static_cast<int>(params_.n);
  return alpha_to_[(index_of_[a] + index_of_[b]) % n];
}

int BchCode::poly_eval(const std::vector<int>& poly, int alpha_power) const {
  const int n = static_cast<int>(params_.n);
  int acc = 0;
  for (std::size_t j = 0; j < poly.size(); ++j) {
    if (poly[j] == 0) continue;
    int e = (index_of_[poly[j]] +
             static_cast<int>(j) * alpha_power % n) % n;
    acc ^= alpha_to_[e];
  }
  return acc;
}

Bits BchCode::encode(const Bits& message) const {
  const unsigned n = params_.n, k = params_.k;
  if (message.size() != k)
    throw std::invalid_argument("bch encode: message must have k bits");
  const unsigned r = n - k;
  Bits parity(r, 0);
  if (r > 0) {
    for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
      std::uint8_t feedback = (message[static_cast<std::size_t>(i)] & 1u) ^
                              parity[r - 1];
      for (unsigned j = r - 1; j > 0; --j) {
        parity[j] = parity[j - 1] ^ (feedback & genpoly_[j]);
      }
      parity[0] = feedback & genpoly_[0];
    }
  }
  Bits code(n);
  for (unsigned j = 0; j < r; ++j) code[j] = parity[j];
  for (unsigned i = 0; i < k; ++i) code[r + i] = message[i] & 1u;
  return code;
}

std::optional<Bits> BchCode::decode(const Bits& word) const {
  const unsigned n = params_.n, k = params_.k, t = params_.t;
  if (word.size() != n)
    throw std::invalid_argument("bch decode: word must have n bits");

  Bits recd = word;
  for (auto& b : recd) b &= 1u;

  auto extract = [&](const Bits& w) {
    Bits msg(k);
    for (unsigned i = 0; i < k; ++i) msg[i] = w[n - k + i];
    return msg;
  };

  if (t == 0) return extract(recd);

  auto syndromes = [&](const Bits& w) {
    std::vector<int> s(2 * t + 1, 0);
    for (unsigned i = 1; i <= 2 * t; ++i) {
      int acc = 0;
      for (unsigned j = 0; j < n; ++j) {
        if (w[j]) acc ^= alpha_to_[(i * j) % n];
      }
      s[i] = acc;
    }
    return s;
  };

  std::vector<int> s = syndromes(recd);
  bool clean = true;
  for (unsigned i = 1; i <= 2 * t; ++i) {
    if (s[i] != 0) {
      clean = false;
      break;
    }
  }
  if (clean) return extract(recd);

  // Berlekamp-Massey over GF(2^m).
  auto gf_inv = [&](int a) {
    return alpha_to_[(static_cast<int>(n) - index_of_[a]) %
                     static_cast<int>(n)];
  };
  std::vector<int> C = {1}, B = {1};
  unsigned L = 0, shift = 1;
  int b = 1;
  for (unsigned r = 0; r < 2 * t; ++r) {
    int d = s[r + 1];
    for (unsigned i = 1; i <= L && i < C.size(); ++i) {
      if (C[i] != 0 && s[r + 1 - i] != 0) d ^= gf_mul(C[i], s[r + 1 - i]);
    }
    if (d == 0) {
      ++shift;
      continue;
    }
    int coef = gf_mul(d, gf_inv(b));
    std::vector<int> T = C;
    if (C.size() < B.size() + shift) C.resize(B.size() + shift, 0);
    for (std::size_t i = 0; i < B.size(); ++i) {
      if (B[i] != 0) C[i + shift] ^= gf_mul(coef, B[i]);
    }
    if (2 * L <= r) {
      L = r + 1 - L;
      B = std::move(T);
      b = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  if (L > t) return std::nullopt;

  // Chien search: roots alpha^i of the locator mark errors at n - i.
  std::vector<unsigned> positions;
  for (unsigned i = 0; i < n; ++i) {
    if (poly_eval(C, static_cast<int>(i)) == 0)
      positions.push_back((n - i) % n);
  }
  if (positions.size() != L) return std::nullopt;

  Bits fixed = recd;
  for (unsigned pos : positions) fixed[pos] ^= 1u;

  // The corrected word must be a codeword.
  std::vector<int> s2 = syndromes(fixed);
  for (unsigned i = 1; i <= 2 * t; ++i) {
    if (s2[i] != 0) return std::nullopt;
  }
  return extract(fixed);
}

}  // namespace gaitpair
