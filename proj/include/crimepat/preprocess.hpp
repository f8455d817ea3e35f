#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "crimepat/categories.hpp"
#include "crimepat/ingestion.hpp"

namespace crimepat {

// Hour 0 belongs to T6; hour 1 starts T1. Throws OutOfRange outside 0..23.
TimeBin bin_time(int hour);

struct TemporalAttributes {
  Month month;
  Weekday day;
  TimeBin time;
  int year;
};

TemporalAttributes derive_temporal(const CivilDate& date, const TimeOfDay& time);

// Raw offense text (normalize_category form) to unified group.
class TypeMapping {
 public:
  TypeMapping() = default;

  void set(std::string_view raw_category, CrimeCategory category);
  std::optional<CrimeCategory> find(std::string_view raw_category) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<std::string, CrimeCategory>& entries() const noexcept { return entries_; }

  // {raw_category: unified_name}; unified_name must be one of the six canonical names.
  static TypeMapping from_json(const nlohmann::json& j);
  static TypeMapping load(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;

 private:
  std::map<std::string, CrimeCategory> entries_;
};

// Throws UnmappedCategory naming the raw value.
CrimeCategory map_crime_type(std::string_view raw_category, const TypeMapping& mapping);

// The shipped defaults: the 14 Denver offense categories, and the Los Angeles
// crime-code descriptions materialized through la_keyword_category().
TypeMapping default_mapping(SchemaId schema);

// Known Los Angeles crime-code descriptions, as published (upper case).
std::span<const std::string_view> la_category_vocabulary();

// Keyword rules used to group Los Angeles descriptions (normalize_category form);
// first matching rule wins, OtherCrimes when nothing matches.
CrimeCategory la_keyword_category(std::string_view raw_category);

struct UnifiedCrimeRecord {
  CrimeCategory type = CrimeCategory::OtherCrimes;
  Month month = Month::January;
  Weekday day = Weekday::Monday;
  TimeBin time = TimeBin::T6;
  std::string location;
  int year = 1970;
  std::optional<int> hour;  // pre-binning hour, for hourly tables

  friend bool operator==(const UnifiedCrimeRecord&, const UnifiedCrimeRecord&) = default;
};

struct PreprocessOptions {
  double max_rejection_fraction = 0.01;
};

struct PreprocessReport {
  SchemaId schema = SchemaId::Denver;
  std::size_t input_records = 0;
  std::size_t output_records = 0;
  std::size_t rejected = 0;
  std::map<std::string, std::size_t> rejection_reasons;
  std::map<std::string, std::size_t> unmapped_categories;

  nlohmann::ordered_json to_json() const;
};

struct PreprocessResult {
  std::vector<UnifiedCrimeRecord> records;
  PreprocessReport report;
};

// Records with unmapped categories or without a time of day are excluded and
// counted. Throws RejectionThresholdExceeded when the excluded fraction is above
// options.max_rejection_fraction.
PreprocessResult preprocess_dataset(std::span<const RawCrimeRecord> raw, SchemaId schema,
                                    const TypeMapping& mapping, const PreprocessOptions& options = {});

}  // namespace crimepat
