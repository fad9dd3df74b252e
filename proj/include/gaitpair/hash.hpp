#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gaitpair {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(const void* data, std::size_t len);
Digest sha256(const std::vector<std::uint8_t>& data);
Digest sha256_file(const std::filesystem::path& path);

std::string hex(const Digest& d);

}  // namespace gaitpair
