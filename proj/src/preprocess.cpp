#include "crimepat/preprocess.hpp"

#include <fstream>

#include "crimepat/error.hpp"
#include "crimepat/text.hpp"

namespace crimepat {

TimeBin bin_time(int hour) {
  if (hour < 0 || hour > 23) {
    throw Error(ErrorCode::OutOfRange, "hour " + std::to_string(hour) + " outside 0..23");
  }
  if (hour == 0) return TimeBin::T6;
  return static_cast<TimeBin>((hour - 1) / 4 + 1);
}

TemporalAttributes derive_temporal(const CivilDate& date, const TimeOfDay& time) {
  return TemporalAttributes{
      static_cast<Month>(date.month),
      date.weekday(),
      bin_time(time.hour),
      date.year,
  };
}

void TypeMapping::set(std::string_view raw_category, CrimeCategory category) {
  entries_[normalize_category(raw_category)] = category;
}

std::optional<CrimeCategory> TypeMapping::find(std::string_view raw_category) const {
  auto it = entries_.find(normalize_category(raw_category));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

TypeMapping TypeMapping::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedInput, "type mapping must be a JSON object");
  TypeMapping m;
  for (const auto& [raw, value] : j.items()) {
    if (!value.is_string()) {
      throw Error(ErrorCode::MalformedInput, "mapping value for '" + raw + "' is not a string");
    }
    const auto name = value.get<std::string>();
    auto category = parse_category(name);
    if (!category) {
      throw Error(ErrorCode::MalformedInput,
                  "mapping value '" + name + "' for '" + raw + "' is not a unified crime type");
    }
    m.set(raw, *category);
  }
  return m;
}

TypeMapping TypeMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, path.string() + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::ordered_json TypeMapping::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [raw, category] : entries_) j[raw] = category_name(category);
  return j;
}

CrimeCategory map_crime_type(std::string_view raw_category, const TypeMapping& mapping) {
  auto c = mapping.find(raw_category);
  if (!c) throw Error(ErrorCode::UnmappedCategory, "no mapping for '" + std::string(raw_category) + "'");
  return *c;
}

TypeMapping default_mapping(SchemaId schema) {
  TypeMapping m;
  if (schema == SchemaId::Denver) {
    m.set("aggravated-assault", CrimeCategory::Assault);
    m.set("murder", CrimeCategory::Assault);
    m.set("other-crimes-against-persons", CrimeCategory::Assault);
    m.set("sexual-assault", CrimeCategory::Assault);
    m.set("drug-alcohol", CrimeCategory::DrugAlcohol);
    m.set("all-other-crimes", CrimeCategory::OtherCrimes);
    m.set("arson", CrimeCategory::OtherCrimes);
    m.set("public-disorder", CrimeCategory::PublicDisorder);
    m.set("larceny", CrimeCategory::Theft);
    m.set("burglary", CrimeCategory::Theft);
    m.set("robbery", CrimeCategory::Theft);
    m.set("theft-from-motor-vehicle", CrimeCategory::Theft);
    m.set("auto-theft", CrimeCategory::Theft);
    m.set("white-collar-crime", CrimeCategory::WhiteCollarCrime);
    return m;
  }
  for (auto raw : la_category_vocabulary()) m.set(raw, la_keyword_category(normalize_category(raw)));
  return m;
}

nlohmann::ordered_json PreprocessReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = schema_name(schema);
  j["input_records"] = input_records;
  j["output_records"] = output_records;
  j["rejected"] = rejected;
  j["rejection_reasons"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rejection_reasons) j["rejection_reasons"][k] = v;
  j["unmapped_categories"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : unmapped_categories) j["unmapped_categories"][k] = v;
  return j;
}

PreprocessResult preprocess_dataset(std::span<const RawCrimeRecord> raw, SchemaId schema,
                                    const TypeMapping& mapping, const PreprocessOptions& options) {
  PreprocessResult result;
  auto& report = result.report;
  report.schema = schema;
  report.input_records = raw.size();
  result.records.reserve(raw.size());

  for (const auto& r : raw) {
    auto type = mapping.find(r.offense_category);
    if (!type) {
      ++report.rejected;
      ++report.rejection_reasons["unmapped-category"];
      ++report.unmapped_categories[r.offense_category];
      continue;
    }
    if (!r.time) {
      ++report.rejected;
      ++report.rejection_reasons["missing-time"];
      continue;
    }
    const auto t = derive_temporal(r.date, *r.time);
    UnifiedCrimeRecord u;
    u.type = *type;
    u.month = t.month;
    u.day = t.day;
    u.time = t.time;
    u.location = r.location;
    u.year = t.year;
    u.hour = r.time->hour;
    result.records.push_back(std::move(u));
  }
  report.output_records = result.records.size();

  if (!raw.empty()) {
    const double fraction = static_cast<double>(report.rejected) / static_cast<double>(raw.size());
    if (fraction > options.max_rejection_fraction) {
      std::string detail = std::to_string(report.rejected) + " of " + std::to_string(raw.size()) +
                           " records rejected (limit " + format_fixed(100 * options.max_rejection_fraction, 2) +
                           "%)";
      if (!report.unmapped_categories.empty()) {
        detail += "; unmapped categories:";
        std::size_t listed = 0;
        for (const auto& [k, v] : report.unmapped_categories) {
          if (listed++ == 10) {
            detail += " ...";
            break;
          }
          detail += " '" + k + "' (" + std::to_string(v) + ")";
        }
      }
      throw Error(ErrorCode::RejectionThresholdExceeded, detail);
    }
  }
  return result;
}

}  // namespace crimepat
