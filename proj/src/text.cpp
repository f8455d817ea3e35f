#include "crimepat/text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace crimepat {
namespace {

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

std::string normalize_location(std::string_view s) {
  std::string out;
  bool pending_sep = false;
  for (char c : s) {
    if (is_space(c) || c == '-') {
      pending_sep = true;
      continue;
    }
    if (pending_sep && !out.empty()) out.push_back('-');
    pending_sep = false;
    out.push_back(ascii_lower(c));
  }
  return out;
}

std::string normalize_category(std::string_view s) {
  std::string out;
  bool pending_sep = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending_sep = true;
      continue;
    }
    if (pending_sep) out.push_back(' ');
    pending_sep = false;
    out.push_back(ascii_lower(c));
  }
  return out;
}

bool parse_int(std::string_view s, int& out) noexcept {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_uint64(std::string_view s, std::uint64_t& out) noexcept {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_double(std::string_view s, double& out) noexcept {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string format_fixed(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // Nudge by a relative epsilon so that binary representations of x.xx5 round up.
  const double scaled = value * scale;
  const double rounded = std::round(scaled + std::copysign(std::abs(scaled) * 1e-12, scaled));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded / scale);
  std::string out(buf);
  if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') out.erase(0, 1);
  return out;
}

}  // namespace crimepat
