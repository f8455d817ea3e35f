#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace crimepat {

constexpr char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string_view trim(std::string_view s) noexcept;
std::string to_lower(std::string_view s);

// Lowercase; runs of whitespace and hyphens become a single '-'.
// "Five Points", "five-points" and " FIVE - points " all map to "five-points".
std::string normalize_location(std::string_view s);

// Lowercase, trimmed, internal whitespace collapsed to one space.
std::string normalize_category(std::string_view s);

// Whole-string integer parse with optional leading '-'; no surrounding whitespace.
bool parse_int(std::string_view s, int& out) noexcept;
bool parse_uint64(std::string_view s, std::uint64_t& out) noexcept;
bool parse_double(std::string_view s, double& out) noexcept;

std::size_t edit_distance(std::string_view a, std::string_view b);

// Fixed-point rendering rounded half away from zero.
std::string format_fixed(double value, int decimals);

}  // namespace crimepat
