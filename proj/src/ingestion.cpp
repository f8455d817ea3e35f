#include "crimepat/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <unordered_map>

#include "crimepat/csv.hpp"
#include "crimepat/error.hpp"
#include "crimepat/text.hpp"

namespace crimepat {
namespace {

std::string header_key(std::string_view name) { return normalize_category(name); }

// Whitespace tokens; an ISO 'T' between date and time digits also separates.
std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool iso_t = c == 'T' && i > 0 && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
                       std::isdigit(static_cast<unsigned char>(s[i + 1]));
    if (c == ' ' || c == '\t' || iso_t) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<CivilDate> parse_slash_date(std::string_view token) {
  const auto a = token.find('/');
  if (a == std::string_view::npos) return std::nullopt;
  const auto b = token.find('/', a + 1);
  if (b == std::string_view::npos) return std::nullopt;
  int m = 0, d = 0, y = 0;
  const auto ys = token.substr(b + 1);
  if (!parse_int(token.substr(0, a), m) || !parse_int(token.substr(a + 1, b - a - 1), d) ||
      !parse_int(ys, y)) {
    return std::nullopt;
  }
  if (ys.size() == 2) {
    y += 2000;
  } else if (ys.size() != 4) {
    return std::nullopt;
  }
  CivilDate out{y, m, d};
  if (!out.valid()) return std::nullopt;
  return out;
}

std::optional<CivilDate> parse_date_token(std::string_view token) {
  if (token.find('/') != std::string_view::npos) return parse_slash_date(token);
  return parse_iso_date(token);
}

std::optional<TimeOfDay> parse_clock(std::string_view token) {
  const auto a = token.find(':');
  if (a == std::string_view::npos) return std::nullopt;
  auto rest = token.substr(a + 1);
  const auto b = rest.find(':');
  std::string_view minutes = rest.substr(0, b);
  int h = 0, m = 0, s = 0;
  if (!parse_int(token.substr(0, a), h) || minutes.size() != 2 || !parse_int(minutes, m)) {
    return std::nullopt;
  }
  if (b != std::string_view::npos) {
    auto secs = rest.substr(b + 1);
    if (secs.size() != 2 || !parse_int(secs, s) || s < 0 || s > 59) return std::nullopt;
  }
  TimeOfDay out{h, m};
  if (!out.valid()) return std::nullopt;
  return out;
}

std::optional<bool> parse_flag(std::string_view s) {
  const std::string v = to_lower(trim(s));
  if (v == "1" || v == "true" || v == "yes" || v == "y" || v == "t") return true;
  if (v == "0" || v == "false" || v == "no" || v == "n" || v == "f") return false;
  return std::nullopt;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path.string());
  return in;
}

struct HeaderIndex {
  std::unordered_map<std::string, std::size_t> by_key;

  explicit HeaderIndex(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) by_key.emplace(header_key(header[i]), i);
  }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = by_key.find(header_key(name));
    if (it == by_key.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(std::string_view name) const {
    auto i = find(name);
    if (!i) throw Error(ErrorCode::MissingColumn, "header lacks column '" + std::string(name) + "'");
    return *i;
  }
};

}  // namespace

std::string_view schema_name(SchemaId schema) noexcept {
  return schema == SchemaId::Denver ? "denver" : "la";
}

std::optional<SchemaId> parse_schema(std::string_view text) {
  const std::string v = normalize_location(text);
  if (v == "denver") return SchemaId::Denver;
  if (v == "la" || v == "los-angeles" || v == "losangeles") return SchemaId::LosAngeles;
  return std::nullopt;
}

void IngestReport::accept() noexcept {
  ++rows_read;
  ++rows_accepted;
}

void IngestReport::reject(const std::string& reason) {
  ++rows_read;
  ++rows_rejected;
  ++rejection_reasons[reason];
}

nlohmann::ordered_json IngestReport::to_json() const {
  nlohmann::ordered_json j;
  j["rows_read"] = rows_read;
  j["rows_accepted"] = rows_accepted;
  j["rows_rejected"] = rows_rejected;
  j["rejection_reasons"] = nlohmann::ordered_json::object();
  for (const auto& [reason, count] : rejection_reasons) j["rejection_reasons"][reason] = count;
  return j;
}

std::vector<std::string> crime_key_columns(SchemaId schema) {
  if (schema == SchemaId::Denver) {
    return {"OFFENSE_CATEGORY_ID", "FIRST_OCCURRENCE_DATE", "NEIGHBORHOOD_ID", "IS_CRIME"};
  }
  return {"Crm Cd Desc", "DATE OCC", "TIME OCC", "AREA NAME"};
}

std::optional<std::pair<CivilDate, std::optional<TimeOfDay>>> parse_denver_datetime(
    std::string_view text) {
  const auto tokens = split_ws(trim(text));
  if (tokens.empty() || tokens.size() > 3) return std::nullopt;
  auto date = parse_date_token(tokens[0]);
  if (!date) return std::nullopt;
  if (tokens.size() == 1) return std::make_pair(*date, std::optional<TimeOfDay>{});
  auto time = parse_clock(tokens[1]);
  if (!time) return std::nullopt;
  if (tokens.size() == 3) {
    const std::string ampm = to_lower(tokens[2]);
    if (time->hour < 1 || time->hour > 12) return std::nullopt;
    if (ampm == "am") {
      if (time->hour == 12) time->hour = 0;
    } else if (ampm == "pm") {
      if (time->hour != 12) time->hour += 12;
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(*date, time);
}

std::optional<CivilDate> parse_la_date(std::string_view text) {
  const auto tokens = split_ws(trim(text));
  if (tokens.empty()) return std::nullopt;
  return parse_date_token(tokens[0]);
}

std::optional<TimeOfDay> parse_military_time(std::string_view text) {
  text = trim(text);
  if (text.empty() || text.size() > 4) return std::nullopt;
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  const std::string padded = std::string(4 - text.size(), '0') + std::string(text);
  int h = 0, m = 0;
  parse_int(std::string_view(padded).substr(0, 2), h);
  parse_int(std::string_view(padded).substr(2, 2), m);
  TimeOfDay out{h, m};
  if (!out.valid()) return std::nullopt;
  return out;
}

CrimeLoad read_crime_csv(std::istream& in, SchemaId schema) {
  CsvReader reader(in);
  std::vector<std::string> row;
  CrimeLoad load;
  if (!reader.next(row)) {
    throw Error(ErrorCode::MissingColumn, "file has no header row");
  }
  const HeaderIndex header(row);
  const auto keys = crime_key_columns(schema);
  std::vector<std::size_t> col;
  for (const auto& k : keys) col.push_back(header.require(k));
  const std::size_t needed = *std::max_element(col.begin(), col.end()) + 1;
  // Column roles differ per schema: Denver is (category, datetime, location, flag),
  // Los Angeles is (category, date, time, location).
  const std::size_t c_category = col[0];
  const std::size_t c_date = col[1];
  const std::size_t c_location = schema == SchemaId::Denver ? col[2] : col[3];
  const std::size_t c_extra = schema == SchemaId::Denver ? col[3] : col[2];

  std::size_t data_row = 0;
  while (reader.next(row)) {
    ++data_row;
    if (row.size() < needed) {
      load.report.reject("short-row");
      continue;
    }
    RawCrimeRecord rec;
    rec.source_row = data_row;
    rec.offense_category = normalize_category(row[c_category]);
    rec.location = normalize_location(row[c_location]);
    if (rec.offense_category.empty()) {
      load.report.reject("missing-offense-category");
      continue;
    }
    if (rec.location.empty()) {
      load.report.reject("missing-location");
      continue;
    }
    const std::string_view date_text = trim(row[c_date]);
    if (date_text.empty()) {
      load.report.reject("missing-date");
      continue;
    }

    if (schema == SchemaId::Denver) {
      auto dt = parse_denver_datetime(date_text);
      if (!dt) {
        load.report.reject("bad-date");
        continue;
      }
      rec.date = dt->first;
      rec.time = dt->second;
      const std::string_view flag = trim(row[c_extra]);
      if (flag.empty()) {
        load.report.reject("missing-is-crime");
        continue;
      }
      rec.is_crime = parse_flag(flag);
      if (!rec.is_crime) {
        load.report.reject("bad-is-crime");
        continue;
      }
    } else {
      auto date = parse_la_date(date_text);
      if (!date) {
        load.report.reject("bad-date");
        continue;
      }
      rec.date = *date;
      const std::string_view time_text = trim(row[c_extra]);
      if (time_text.empty()) {
        load.report.reject("missing-time");
        continue;
      }
      rec.time = parse_military_time(time_text);
      if (!rec.time) {
        load.report.reject("bad-time");
        continue;
      }
    }
    load.records.push_back(std::move(rec));
    load.report.accept();
  }
  return load;
}

CrimeLoad load_crime_csv(const std::filesystem::path& path, SchemaId schema) {
  auto in = open_or_throw(path);
  return read_crime_csv(in, schema);
}

std::vector<RawCrimeRecord> filter_crimes(std::span<const RawCrimeRecord> records, SchemaId schema,
                                          std::span<const std::string> excluded_categories) {
  std::vector<RawCrimeRecord> out;
  out.reserve(records.size());
  if (schema == SchemaId::Denver) {
    for (const auto& r : records) {
      if (r.is_crime.value_or(false)) out.push_back(r);
    }
    return out;
  }
  std::set<std::string> excluded;
  for (const auto& c : excluded_categories) excluded.insert(normalize_category(c));
  for (const auto& r : records) {
    if (!excluded.contains(r.offense_category)) out.push_back(r);
  }
  return out;
}

DemographicsColumns DemographicsColumns::from_json(const nlohmann::json& j) {
  DemographicsColumns c;
  auto take = [&](const char* key, std::string& field) {
    if (j.contains(key)) field = j.at(key).get<std::string>();
  };
  take("neighborhood", c.neighborhood);
  take("population_total", c.population_total);
  take("male", c.male);
  take("female", c.female);
  take("housing_units_total", c.housing_units_total);
  take("occupied_units", c.occupied_units);
  take("vacant_units", c.vacant_units);
  take("owned_units", c.owned_units);
  take("rented_units", c.rented_units);
  take("race_prefix", c.race_prefix);
  if (j.contains("age_brackets")) {
    const auto& ab = j.at("age_brackets");
    if (!ab.is_array()) {
      throw Error(ErrorCode::InvalidArgument, "age_brackets must be an array of [label, column] pairs");
    }
    for (const auto& pair : ab) {
      c.age_brackets.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    }
  }
  return c;
}

DemographicsLoad read_demographics_csv(std::istream& in, const DemographicsColumns& columns) {
  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) throw Error(ErrorCode::MissingColumn, "file has no header row");
  const HeaderIndex index(header);

  const std::size_t c_name = index.require(columns.neighborhood);
  const std::size_t c_pop = index.require(columns.population_total);
  const std::size_t c_male = index.require(columns.male);
  const std::size_t c_female = index.require(columns.female);
  const std::size_t c_units = index.require(columns.housing_units_total);
  const std::size_t c_occ = index.require(columns.occupied_units);
  const std::size_t c_vac = index.require(columns.vacant_units);
  const std::size_t c_own = index.require(columns.owned_units);
  const std::size_t c_rent = index.require(columns.rented_units);

  std::vector<std::pair<std::string, std::size_t>> age_cols;
  if (!columns.age_brackets.empty()) {
    for (const auto& [label, name] : columns.age_brackets) age_cols.emplace_back(label, index.require(name));
  } else {
    static const std::regex range_re(R"(^AGE_(\d+)_TO_(\d+)$)", std::regex::icase);
    static const std::regex plus_re(R"(^AGE_(\d+)_(PLUS|AND_OVER)$)", std::regex::icase);
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string h(trim(header[i]));
      std::smatch m;
      if (std::regex_match(h, m, range_re)) {
        age_cols.emplace_back(m[1].str() + "-" + m[2].str(), i);
      } else if (std::regex_match(h, m, plus_re)) {
        age_cols.emplace_back(m[1].str() + "+", i);
      }
    }
  }
  std::vector<std::pair<std::string, std::size_t>> race_cols;
  if (!columns.race_prefix.empty()) {
    const std::string prefix = to_lower(columns.race_prefix);
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string h(trim(header[i]));
      if (to_lower(h).starts_with(prefix)) race_cols.emplace_back(h, i);
    }
  }

  std::size_t needed = std::max({c_name, c_pop, c_male, c_female, c_units, c_occ, c_vac, c_own, c_rent});
  for (const auto& [_, i] : age_cols) needed = std::max(needed, i);
  for (const auto& [_, i] : race_cols) needed = std::max(needed, i);
  ++needed;

  DemographicsLoad load;
  std::set<std::string> seen;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() < needed) {
      load.report.reject("short-row");
      continue;
    }
    DemographicsRecord rec;
    rec.display_name = std::string(trim(row[c_name]));
    rec.neighborhood = normalize_location(rec.display_name);
    if (rec.neighborhood.empty()) {
      load.report.reject("missing-neighborhood");
      continue;
    }
    bool ok = true;
    auto count = [&](std::size_t col, std::uint64_t& out) {
      if (!ok) return;
      double v = 0;
      const auto text = trim(row[col]);
      if (parse_uint64(text, out)) return;
      // Census extracts sometimes carry "123.0".
      if (parse_double(text, v) && v >= 0 && v == static_cast<double>(static_cast<std::uint64_t>(v))) {
        out = static_cast<std::uint64_t>(v);
        return;
      }
      ok = false;
    };
    count(c_pop, rec.population_total);
    count(c_male, rec.male);
    count(c_female, rec.female);
    count(c_units, rec.housing_units_total);
    count(c_occ, rec.occupied_units);
    count(c_vac, rec.vacant_units);
    count(c_own, rec.owned_units);
    count(c_rent, rec.rented_units);
    for (const auto& [label, col] : age_cols) {
      std::uint64_t v = 0;
      count(col, v);
      rec.age_brackets.emplace_back(label, v);
    }
    if (!ok) {
      load.report.reject("bad-count");
      continue;
    }
    for (const auto& [label, col] : race_cols) {
      double v = 0;
      if (!parse_double(trim(row[col]), v)) v = 0;
      rec.race.emplace_back(label, v);
    }
    if (rec.male + rec.female != rec.population_total) {
      load.report.reject("gender-sum-mismatch");
      continue;
    }
    if (rec.occupied_units + rec.vacant_units != rec.housing_units_total) {
      load.report.reject("unit-sum-mismatch");
      continue;
    }
    if (!seen.insert(rec.neighborhood).second) {
      throw Error(ErrorCode::DuplicateNeighborhood,
                  "neighborhood '" + rec.display_name + "' appears more than once");
    }
    load.records.push_back(std::move(rec));
    load.report.accept();
  }
  return load;
}

DemographicsLoad load_demographics_csv(const std::filesystem::path& path, const DemographicsColumns& columns) {
  auto in = open_or_throw(path);
  return read_demographics_csv(in, columns);
}

}  // namespace crimepat
