#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crimepat/preprocess.hpp"

namespace crimepat {

enum class Attribute { Month, Day, Time, Location, Type, Hour };

std::string_view attribute_name(Attribute a) noexcept;
std::optional<Attribute> parse_attribute(std::string_view name);

struct FrequencyRow {
  std::string value;
  std::size_t count = 0;
  double percentage = 0.0;
};

// Rows hold observed values only. Order: calendar for months and days, T1..T6,
// type id, hour 0..23, and descending count (ties alphabetical) for locations.
struct FrequencyTable {
  Attribute attribute = Attribute::Month;
  std::vector<FrequencyRow> rows;
  std::size_t total = 0;
  std::optional<int> filter_year;

  bool empty() const noexcept { return total == 0; }
};

// Hour tables count only records that carry an hour.
FrequencyTable frequency_table(std::span<const UnifiedCrimeRecord> dataset, Attribute attribute,
                               std::optional<int> year_filter = std::nullopt);

struct CrossTab {
  Attribute row_attribute = Attribute::Type;
  Attribute col_attribute = Attribute::Day;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::size_t>> cells;  // [row][col]
  std::size_t total = 0;
  std::optional<int> filter_year;

  bool empty() const noexcept { return total == 0; }
};

// Throws InvalidArgument when both attributes are the same.
CrossTab crosstab(std::span<const UnifiedCrimeRecord> dataset, Attribute row_attribute, Attribute col_attribute,
                  std::optional<int> year_filter = std::nullopt);

// Top, middle and bottom locations by count, in rank order. The middle block is
// centred on the median rank and clamped clear of the top and bottom blocks.
// Throws InsufficientLocations when the three blocks exceed the distinct count.
FrequencyTable top_and_bottom_locations(std::span<const UnifiedCrimeRecord> dataset, std::size_t top_k,
                                        std::size_t bottom_k, std::size_t middle_k);

// value,count,percentage with percentages at two decimals.
void write_frequency_csv(std::ostream& out, const FrequencyTable& table);
// Header row "<row>\<col>,label...", then one row per row label.
void write_crosstab_csv(std::ostream& out, const CrossTab& table);

}  // namespace crimepat
