#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <span>
#include <string>

namespace socnav {

using Sha256 = std::array<std::uint8_t, 32>;

Sha256 sha256(std::span<const std::uint8_t> bytes);
Sha256 sha256(const std::string& text);
/// Digest of everything remaining in `in`.
Sha256 sha256(std::istream& in);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace socnav
