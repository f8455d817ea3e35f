#include "crimepat/categories.hpp"

#include <chrono>
#include <cstdio>

#include "crimepat/text.hpp"

namespace crimepat {
namespace {

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "Assault", "DrugAlcohol", "OtherCrimes", "PublicDisorder", "Theft", "WhiteCollarCrime",
};

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December",
};

constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday",
};

constexpr std::array<std::string_view, 6> kTimeBinNames = {"T1", "T2", "T3", "T4", "T5", "T6"};

// Lowercase with spaces, underscores and hyphens removed.
std::string squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(ascii_lower(c));
  }
  return out;
}

template <std::size_t N>
std::optional<std::size_t> find_squashed(const std::array<std::string_view, N>& names,
                                         std::string_view needle) {
  const std::string key = squash(needle);
  for (std::size_t i = 0; i < N; ++i) {
    if (squash(names[i]) == key) return i;
  }
  return std::nullopt;
}

}  // namespace

std::string_view category_name(CrimeCategory c) noexcept { return kCategoryNames[category_index(c)]; }

std::optional<CrimeCategory> category_from_id(int id) noexcept {
  if (id < 1 || id > static_cast<int>(kCategoryCount)) return std::nullopt;
  return static_cast<CrimeCategory>(id);
}

std::optional<CrimeCategory> parse_category(std::string_view name) {
  auto i = find_squashed(kCategoryNames, name);
  if (!i) {
    // Table-style display names.
    const std::string key = squash(name);
    if (key == "othercrime") return CrimeCategory::OtherCrimes;
    if (key == "whitecollar") return CrimeCategory::WhiteCollarCrime;
    return std::nullopt;
  }
  return kAllCategories[*i];
}

std::string_view month_name(Month m) noexcept { return kMonthNames[static_cast<std::size_t>(m) - 1]; }

std::optional<Month> parse_month(std::string_view name) {
  auto i = find_squashed(kMonthNames, name);
  if (!i) return std::nullopt;
  return static_cast<Month>(*i + 1);
}

std::string_view weekday_name(Weekday d) noexcept { return kWeekdayNames[static_cast<std::size_t>(d)]; }

std::optional<Weekday> parse_weekday(std::string_view name) {
  auto i = find_squashed(kWeekdayNames, name);
  if (!i) return std::nullopt;
  return static_cast<Weekday>(*i);
}

std::string_view time_bin_name(TimeBin t) noexcept { return kTimeBinNames[static_cast<std::size_t>(t) - 1]; }

std::optional<TimeBin> parse_time_bin(std::string_view name) {
  auto i = find_squashed(kTimeBinNames, name);
  if (!i) return std::nullopt;
  return static_cast<TimeBin>(*i + 1);
}

bool CivilDate::valid() const noexcept {
  using namespace std::chrono;
  return year_month_day{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                        std::chrono::day{static_cast<unsigned>(day)}}
      .ok();
}

Weekday CivilDate::weekday() const noexcept {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  const unsigned iso = std::chrono::weekday{sys_days{ymd}}.iso_encoding();  // 1 = Monday
  return static_cast<Weekday>(iso - 1);
}

std::string CivilDate::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::string TimeOfDay::hhmm() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d:%02d", hour, minute);
  return buf;
}

std::optional<CivilDate> parse_iso_date(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  CivilDate out{y, m, d};
  if (!out.valid()) return std::nullopt;
  return out;
}

std::optional<TimeOfDay> parse_hhmm(std::string_view text) {
  int h = 0, m = 0;
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  if (!parse_int(text.substr(0, 2), h) || !parse_int(text.substr(3, 2), m)) return std::nullopt;
  TimeOfDay out{h, m};
  if (!out.valid()) return std::nullopt;
  return out;
}

}  // namespace crimepat
