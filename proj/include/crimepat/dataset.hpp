#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "crimepat/ingestion.hpp"
#include "crimepat/preprocess.hpp"

namespace crimepat {

// Unified dataset: JSON Lines with keys type, type_id, month, day, time,
// location, year, and hour when the source carried a time of day.
nlohmann::ordered_json to_json(const UnifiedCrimeRecord& r);
UnifiedCrimeRecord unified_from_json(const nlohmann::json& j);

void write_unified_jsonl(std::ostream& out, std::span<const UnifiedCrimeRecord> records);
std::vector<UnifiedCrimeRecord> read_unified_jsonl(std::istream& in);
std::vector<UnifiedCrimeRecord> load_unified_jsonl(const std::filesystem::path& path);

// Ingest stage output: JSON Lines of raw records (offense_category, date,
// time, location, is_crime, source_row).
nlohmann::ordered_json to_json(const RawCrimeRecord& r);
RawCrimeRecord raw_from_json(const nlohmann::json& j);

void write_raw_jsonl(std::ostream& out, std::span<const RawCrimeRecord> records);
std::vector<RawCrimeRecord> read_raw_jsonl(std::istream& in);
std::vector<RawCrimeRecord> load_raw_jsonl(const std::filesystem::path& path);

}  // namespace crimepat
