#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gaitpair {

// Bit material is kept as one value (0 or 1) per element. The packed byte
// representation used for hashing, error correction and file export is
// MSB-first: bit 0 of a sequence becomes the most significant bit of byte 0,
// trailing bits of the last byte are zero-padded. The true bit length is
// always carried separately.
using Bits = std::vector<std::uint8_t>;

std::vector<std::uint8_t> pack_bits(const Bits& bits);
Bits unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t n_bits);

// Number of positions where a and b differ. Throws std::invalid_argument on
// length mismatch.
std::size_t hamming_distance(const Bits& a, const Bits& b);

// Fraction of matching positions, in [0,1]. Throws on mismatch or empty input.
double hamming_similarity(const Bits& a, const Bits& b);

Bits xor_bits(const Bits& a, const Bits& b);

std::string bits_to_string(const Bits& bits);
Bits bits_from_string(const std::string& s);

inline std::uint32_t gray_code(std::uint32_t v) { return v ^ (v >> 1); }

}  // namespace gaitpair
