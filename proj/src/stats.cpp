#include "crimepat/stats.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "crimepat/csv.hpp"
#include "crimepat/error.hpp"
#include "crimepat/text.hpp"

namespace crimepat {
namespace {

// Sort key within an attribute; locations sort by label then get re-ranked by count.
struct Key {
  int ordinal;
  std::string label;

  friend bool operator<(const Key& a, const Key& b) {
    return std::tie(a.ordinal, a.label) < std::tie(b.ordinal, b.label);
  }
};

std::optional<Key> key_of(const UnifiedCrimeRecord& r, Attribute a) {
  switch (a) {
    case Attribute::Month: return Key{static_cast<int>(r.month), std::string(month_name(r.month))};
    case Attribute::Day: return Key{static_cast<int>(r.day), std::string(weekday_name(r.day))};
    case Attribute::Time: return Key{static_cast<int>(r.time), std::string(time_bin_name(r.time))};
    case Attribute::Type: return Key{category_id(r.type), std::string(category_name(r.type))};
    case Attribute::Location: return Key{0, r.location};
    case Attribute::Hour:
      if (!r.hour) return std::nullopt;
      return Key{*r.hour, std::to_string(*r.hour)};
  }
  return std::nullopt;
}

bool passes(const UnifiedCrimeRecord& r, std::optional<int> year) { return !year || r.year == *year; }

// Observed keys with counts, in canonical order for the attribute.
std::vector<std::pair<Key, std::size_t>> ordered_counts(const std::map<Key, std::size_t>& counts, Attribute a) {
  std::vector<std::pair<Key, std::size_t>> rows(counts.begin(), counts.end());
  if (a == Attribute::Location) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
  }
  return rows;
}

double percent(std::size_t count, std::size_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

std::string_view attribute_name(Attribute a) noexcept {
  switch (a) {
    case Attribute::Month: return "month";
    case Attribute::Day: return "day";
    case Attribute::Time: return "time";
    case Attribute::Location: return "location";
    case Attribute::Type: return "type";
    case Attribute::Hour: return "hour";
  }
  return "";
}

std::optional<Attribute> parse_attribute(std::string_view name) {
  const std::string v = to_lower(trim(name));
  for (Attribute a : {Attribute::Month, Attribute::Day, Attribute::Time, Attribute::Location, Attribute::Type,
                      Attribute::Hour}) {
    if (attribute_name(a) == v) return a;
  }
  return std::nullopt;
}

FrequencyTable frequency_table(std::span<const UnifiedCrimeRecord> dataset, Attribute attribute,
                               std::optional<int> year_filter) {
  std::map<Key, std::size_t> counts;
  FrequencyTable table;
  table.attribute = attribute;
  table.filter_year = year_filter;
  for (const auto& r : dataset) {
    if (!passes(r, year_filter)) continue;
    auto k = key_of(r, attribute);
    if (!k) continue;
    ++counts[*k];
    ++table.total;
  }
  for (auto& [k, c] : ordered_counts(counts, attribute)) {
    table.rows.push_back({k.label, c, percent(c, table.total)});
  }
  return table;
}

CrossTab crosstab(std::span<const UnifiedCrimeRecord> dataset, Attribute row_attribute, Attribute col_attribute,
                  std::optional<int> year_filter) {
  if (row_attribute == col_attribute) {
    throw Error(ErrorCode::InvalidArgument, "crosstab needs two distinct attributes");
  }
  std::map<Key, std::size_t> row_counts, col_counts;
  std::map<std::pair<Key, Key>, std::size_t> pair_counts;
  CrossTab table;
  table.row_attribute = row_attribute;
  table.col_attribute = col_attribute;
  table.filter_year = year_filter;
  for (const auto& r : dataset) {
    if (!passes(r, year_filter)) continue;
    auto rk = key_of(r, row_attribute);
    auto ck = key_of(r, col_attribute);
    if (!rk || !ck) continue;
    ++row_counts[*rk];
    ++col_counts[*ck];
    ++pair_counts[{*rk, *ck}];
    ++table.total;
  }
  const auto rows = ordered_counts(row_counts, row_attribute);
  const auto cols = ordered_counts(col_counts, col_attribute);
  for (const auto& [k, _] : rows) table.row_labels.push_back(k.label);
  for (const auto& [k, _] : cols) table.col_labels.push_back(k.label);
  table.cells.assign(rows.size(), std::vector<std::size_t>(cols.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto it = pair_counts.find({rows[i].first, cols[j].first});
      if (it != pair_counts.end()) table.cells[i][j] = it->second;
    }
  }
  return table;
}

FrequencyTable top_and_bottom_locations(std::span<const UnifiedCrimeRecord> dataset, std::size_t top_k,
                                        std::size_t bottom_k, std::size_t middle_k) {
  const FrequencyTable all = frequency_table(dataset, Attribute::Location);
  const std::size_t n = all.rows.size();
  if (top_k + bottom_k + middle_k > n) {
    throw Error(ErrorCode::InsufficientLocations,
                std::to_string(top_k + bottom_k + middle_k) + " locations requested, " + std::to_string(n) +
                    " available");
  }
  FrequencyTable out;
  out.attribute = Attribute::Location;
  out.total = all.total;

  // 0-based start of the middle block: ranks centred on the median of 1..n.
  std::size_t mid_start = (n - middle_k + 1) / 2;  // floor((n - m + 1) / 2) == ceil((n - m) / 2)
  mid_start = std::max(mid_start, top_k);
  mid_start = std::min(mid_start, n - bottom_k - middle_k);

  for (std::size_t i = 0; i < top_k; ++i) out.rows.push_back(all.rows[i]);
  for (std::size_t i = 0; i < middle_k; ++i) out.rows.push_back(all.rows[mid_start + i]);
  for (std::size_t i = n - bottom_k; i < n; ++i) out.rows.push_back(all.rows[i]);
  return out;
}

void write_frequency_csv(std::ostream& out, const FrequencyTable& table) {
  out << "value,count,percentage\n";
  for (const auto& row : table.rows) {
    write_csv_row(out, {row.value, std::to_string(row.count), format_fixed(row.percentage, 2)});
  }
}

void write_crosstab_csv(std::ostream& out, const CrossTab& table) {
  std::vector<std::string> header{std::string(attribute_name(table.row_attribute)) + "\\" +
                                  std::string(attribute_name(table.col_attribute))};
  header.insert(header.end(), table.col_labels.begin(), table.col_labels.end());
  write_csv_row(out, header);
  for (std::size_t i = 0; i < table.row_labels.size(); ++i) {
    std::vector<std::string> row{table.row_labels[i]};
    for (auto c : table.cells[i]) row.push_back(std::to_string(c));
    write_csv_row(out, row);
  }
}

}  // namespace crimepat
