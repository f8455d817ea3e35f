#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace crimepat {

// The six unified crime groups. Underlying values are the published type ids.
enum class CrimeCategory : std::uint8_t {
  Assault = 1,
  DrugAlcohol = 2,
  OtherCrimes = 3,
  PublicDisorder = 4,
  Theft = 5,
  WhiteCollarCrime = 6,
};

inline constexpr std::size_t kCategoryCount = 6;

inline constexpr std::array<CrimeCategory, kCategoryCount> kAllCategories = {
    CrimeCategory::Assault,        CrimeCategory::DrugAlcohol, CrimeCategory::OtherCrimes,
    CrimeCategory::PublicDisorder, CrimeCategory::Theft,       CrimeCategory::WhiteCollarCrime,
};

constexpr int category_id(CrimeCategory c) noexcept { return static_cast<int>(c); }
constexpr std::size_t category_index(CrimeCategory c) noexcept {
  return static_cast<std::size_t>(c) - 1;
}

std::string_view category_name(CrimeCategory c) noexcept;
std::optional<CrimeCategory> category_from_id(int id) noexcept;
// Accepts the canonical names plus spaced/underscored spellings ("Drug Alcohol").
std::optional<CrimeCategory> parse_category(std::string_view name);

enum class Month : std::uint8_t {
  January = 1, February, March, April, May, June,
  July, August, September, October, November, December,
};

std::string_view month_name(Month m) noexcept;
std::optional<Month> parse_month(std::string_view name);

// ISO order: Monday first.
enum class Weekday : std::uint8_t { Monday = 0, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

std::string_view weekday_name(Weekday d) noexcept;
std::optional<Weekday> parse_weekday(std::string_view name);

// Four-hour bins; T6 wraps midnight (21:00-00:59).
enum class TimeBin : std::uint8_t { T1 = 1, T2, T3, T4, T5, T6 };

std::string_view time_bin_name(TimeBin t) noexcept;
std::optional<TimeBin> parse_time_bin(std::string_view name);

struct CivilDate {
  int year = 1970;
  int month = 1;
  int day = 1;

  bool valid() const noexcept;
  Weekday weekday() const noexcept;
  std::string iso() const;
  friend bool operator==(const CivilDate&, const CivilDate&) = default;
};

struct TimeOfDay {
  int hour = 0;
  int minute = 0;

  bool valid() const noexcept { return hour >= 0 && hour <= 23 && minute >= 0 && minute <= 59; }
  std::string hhmm() const;
  friend bool operator==(const TimeOfDay&, const TimeOfDay&) = default;
};

std::optional<CivilDate> parse_iso_date(std::string_view text);
std::optional<TimeOfDay> parse_hhmm(std::string_view text);

}  // namespace crimepat
