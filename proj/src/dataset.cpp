#include "crimepat/dataset.hpp"

#include <fstream>
#include <string>

#include "crimepat/error.hpp"

namespace crimepat {
namespace {

template <typename T, typename Parse>
T parse_field(const nlohmann::json& j, const char* key, Parse parse) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw Error(ErrorCode::MalformedInput, std::string("record lacks string field '") + key + "'");
  }
  const auto text = j.at(key).get<std::string>();
  auto v = parse(text);
  if (!v) throw Error(ErrorCode::MalformedInput, std::string("bad ") + key + " '" + text + "'");
  return *v;
}

int int_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw Error(ErrorCode::MalformedInput, std::string("record lacks integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

template <typename F>
void for_each_line(std::istream& in, F&& f) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      f(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path.string());
  return in;
}

}  // namespace

nlohmann::ordered_json to_json(const UnifiedCrimeRecord& r) {
  nlohmann::ordered_json j;
  j["type"] = category_name(r.type);
  j["type_id"] = category_id(r.type);
  j["month"] = month_name(r.month);
  j["day"] = weekday_name(r.day);
  j["time"] = time_bin_name(r.time);
  j["location"] = r.location;
  j["year"] = r.year;
  if (r.hour) j["hour"] = *r.hour;
  return j;
}

UnifiedCrimeRecord unified_from_json(const nlohmann::json& j) {
  UnifiedCrimeRecord r;
  r.type = parse_field<CrimeCategory>(j, "type", parse_category);
  if (j.contains("type_id") && int_field(j, "type_id") != category_id(r.type)) {
    throw Error(ErrorCode::MalformedInput, "type_id disagrees with type");
  }
  r.month = parse_field<Month>(j, "month", parse_month);
  r.day = parse_field<Weekday>(j, "day", parse_weekday);
  r.time = parse_field<TimeBin>(j, "time", parse_time_bin);
  if (!j.contains("location") || !j.at("location").is_string() || j.at("location").get<std::string>().empty()) {
    throw Error(ErrorCode::MalformedInput, "record lacks a location");
  }
  r.location = j.at("location").get<std::string>();
  r.year = int_field(j, "year");
  if (j.contains("hour") && !j.at("hour").is_null()) {
    const int h = int_field(j, "hour");
    if (h < 0 || h > 23) throw Error(ErrorCode::MalformedInput, "hour outside 0..23");
    r.hour = h;
  }
  return r;
}

void write_unified_jsonl(std::ostream& out, std::span<const UnifiedCrimeRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<UnifiedCrimeRecord> read_unified_jsonl(std::istream& in) {
  std::vector<UnifiedCrimeRecord> out;
  for_each_line(in, [&](const nlohmann::json& j) { out.push_back(unified_from_json(j)); });
  return out;
}

std::vector<UnifiedCrimeRecord> load_unified_jsonl(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_unified_jsonl(in);
}

nlohmann::ordered_json to_json(const RawCrimeRecord& r) {
  nlohmann::ordered_json j;
  j["offense_category"] = r.offense_category;
  j["date"] = r.date.iso();
  j["time"] = r.time ? nlohmann::ordered_json(r.time->hhmm()) : nlohmann::ordered_json(nullptr);
  j["location"] = r.location;
  j["is_crime"] = r.is_crime ? nlohmann::ordered_json(*r.is_crime) : nlohmann::ordered_json(nullptr);
  j["source_row"] = r.source_row;
  return j;
}

RawCrimeRecord raw_from_json(const nlohmann::json& j) {
  RawCrimeRecord r;
  if (!j.contains("offense_category") || !j.at("offense_category").is_string()) {
    throw Error(ErrorCode::MalformedInput, "record lacks offense_category");
  }
  r.offense_category = j.at("offense_category").get<std::string>();
  r.date = parse_field<CivilDate>(j, "date", parse_iso_date);
  if (j.contains("time") && !j.at("time").is_null()) {
    r.time = parse_field<TimeOfDay>(j, "time", parse_hhmm);
  }
  if (!j.contains("location") || !j.at("location").is_string()) {
    throw Error(ErrorCode::MalformedInput, "record lacks location");
  }
  r.location = j.at("location").get<std::string>();
  if (j.contains("is_crime") && !j.at("is_crime").is_null()) r.is_crime = j.at("is_crime").get<bool>();
  if (j.contains("source_row")) r.source_row = j.at("source_row").get<std::size_t>();
  if (r.offense_category.empty() || r.location.empty()) {
    throw Error(ErrorCode::MalformedInput, "empty offense_category or location");
  }
  return r;
}

void write_raw_jsonl(std::ostream& out, std::span<const RawCrimeRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<RawCrimeRecord> read_raw_jsonl(std::istream& in) {
  std::vector<RawCrimeRecord> out;
  for_each_line(in, [&](const nlohmann::json& j) { out.push_back(raw_from_json(j)); });
  return out;
}

std::vector<RawCrimeRecord> load_raw_jsonl(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_raw_jsonl(in);
}

}  // namespace crimepat
