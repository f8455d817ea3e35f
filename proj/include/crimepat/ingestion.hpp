#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "crimepat/categories.hpp"

namespace crimepat {

enum class SchemaId { Denver, LosAngeles };

std::string_view schema_name(SchemaId schema) noexcept;
// "denver", "la", "los-angeles", "losangeles" (case-insensitive).
std::optional<SchemaId> parse_schema(std::string_view text);

struct RawCrimeRecord {
  std::string offense_category;  // normalize_category() form
  CivilDate date;
  std::optional<TimeOfDay> time;
  std::string location;          // normalize_location() form
  std::optional<bool> is_crime;  // Denver only
  std::size_t source_row = 0;    // 1-based data row

  friend bool operator==(const RawCrimeRecord&, const RawCrimeRecord&) = default;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_accepted = 0;
  std::size_t rows_rejected = 0;
  std::map<std::string, std::size_t> rejection_reasons;

  void accept() noexcept;
  void reject(const std::string& reason);
  nlohmann::ordered_json to_json() const;
};

struct CrimeLoad {
  std::vector<RawCrimeRecord> records;
  IngestReport report;
};

// Key columns per schema, in the order they are reported when missing.
std::vector<std::string> crime_key_columns(SchemaId schema);

CrimeLoad read_crime_csv(std::istream& in, SchemaId schema);
CrimeLoad load_crime_csv(const std::filesystem::path& path, SchemaId schema);

// "6/13/14 21:30", "6/13/2014 9:30 PM", "2014-06-13 21:30:00" and date-only forms.
std::optional<std::pair<CivilDate, std::optional<TimeOfDay>>> parse_denver_datetime(std::string_view text);
// "8/23/14"; anything after whitespace (e.g. "12:00:00 AM") is ignored.
std::optional<CivilDate> parse_la_date(std::string_view text);
// Military time, 1-4 digits, left-padded to HHMM: "2200" -> 22:00, "5" -> 00:05.
std::optional<TimeOfDay> parse_military_time(std::string_view text);

// Denver keeps is_crime == true. Los Angeles drops records whose category is in
// `excluded_categories` (compared after normalize_category). Order is preserved.
std::vector<RawCrimeRecord> filter_crimes(std::span<const RawCrimeRecord> records, SchemaId schema,
                                          std::span<const std::string> excluded_categories = {});

struct DemographicsRecord {
  std::string neighborhood;  // normalize_location() form
  std::string display_name;
  std::uint64_t population_total = 0;
  std::uint64_t male = 0;
  std::uint64_t female = 0;
  std::vector<std::pair<std::string, std::uint64_t>> age_brackets;  // label -> count, column order
  std::uint64_t housing_units_total = 0;
  std::uint64_t occupied_units = 0;
  std::uint64_t vacant_units = 0;
  std::uint64_t owned_units = 0;
  std::uint64_t rented_units = 0;
  std::vector<std::pair<std::string, double>> race;  // echoed only
};

// Column-name mapping that selects the needed subset of the demographics table.
struct DemographicsColumns {
  std::string neighborhood = "NBRHD_NAME";
  std::string population_total = "POPULATION_2010";
  std::string male = "MALE";
  std::string female = "FEMALE";
  std::string housing_units_total = "HOUSING_UNITS";
  std::string occupied_units = "OCCUPIED_UNITS";
  std::string vacant_units = "VACANT_UNITS";
  std::string owned_units = "OWNED_UNITS";
  std::string rented_units = "RENTED_UNITS";
  // Explicit (label, column) pairs. When empty, columns named AGE_<a>_TO_<b>
  // and AGE_<a>_PLUS are picked up as "<a>-<b>" and "<a>+".
  std::vector<std::pair<std::string, std::string>> age_brackets;
  // Columns starting with this prefix are carried through as race shares.
  std::string race_prefix = "RACE_";

  static DemographicsColumns from_json(const nlohmann::json& j);
};

struct DemographicsLoad {
  std::vector<DemographicsRecord> records;
  IngestReport report;
};

DemographicsLoad read_demographics_csv(std::istream& in, const DemographicsColumns& columns = {});
DemographicsLoad load_demographics_csv(const std::filesystem::path& path,
                                       const DemographicsColumns& columns = {});

}  // namespace crimepat
