#include "gaitpair/bits.hpp"

#include <stdexcept>

namespace gaitpair {

std::vector<std::uint8_t> pack_bits(const Bits& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return bytes;
}

Bits unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t n_bits) {
  if (n_bits > bytes.size() * 8)
    throw std::invalid_argument("unpack_bits: not enough bytes");
  Bits bits(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i) {
    bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  }
  return bits;
}

std::size_t hamming_distance(const Bits& a, const Bits& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] != 0) != (b[i] != 0)) ++d;
  }
  return d;
}

double hamming_similarity(const Bits& a, const Bits& b) {
  if (a.empty()) throw std::invalid_argument("hamming_similarity: empty input");
  std::size_t d = hamming_distance(a, b);
  return 1.0 - static_cast<double>(d) / static_cast<double>(a.size());
}

Bits xor_bits(const Bits& a, const Bits& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("xor_bits: length mismatch");
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] ^ b[i]) & 1u;
  return out;
}

std::string bits_to_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

Bits bits_from_string(const std::string& s) {
  Bits bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else {
      throw std::invalid_argument("bits_from_string: invalid character");
    }
  }
  return bits;
}

}  // namespace gaitpair
