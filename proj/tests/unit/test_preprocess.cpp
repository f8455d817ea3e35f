#include <doctest.h>

#include <set>

#include "crimepat/error.hpp"
#include "crimepat/ingestion.hpp"
#include "crimepat/preprocess.hpp"
#include "support.hpp"

using namespace crimepat;

TEST_CASE("bin_time boundaries") {
  CHECK(bin_time(21) == TimeBin::T6);
  CHECK(bin_time(0) == TimeBin::T6);
  CHECK(bin_time(1) == TimeBin::T1);
  CHECK(bin_time(4) == TimeBin::T1);
  CHECK(bin_time(5) == TimeBin::T2);
  CHECK(bin_time(12) == TimeBin::T3);
  CHECK(bin_time(16) == TimeBin::T4);
  CHECK(bin_time(17) == TimeBin::T5);
  CHECK(bin_time(20) == TimeBin::T5);
  CHECK(bin_time(23) == TimeBin::T6);
  CHECK_THROWS_AS(bin_time(24), Error);
  CHECK_THROWS_AS(bin_time(-1), Error);
}

TEST_CASE("bin_time partitions the day into six 4-hour bins") {
  std::map<TimeBin, int> per_bin;
  for (int h = 0; h < 24; ++h) ++per_bin[bin_time(h)];
  CHECK(per_bin.size() == 6);
  for (const auto& [bin, hours] : per_bin) CHECK(hours == 4);
}

TEST_CASE("derive_temporal") {
  auto a = derive_temporal({2014, 6, 13}, {21, 30});
  CHECK(a.month == Month::June);
  CHECK(a.day == Weekday::Friday);
  CHECK(a.time == TimeBin::T6);
  CHECK(a.year == 2014);
  auto b = derive_temporal({2014, 1, 1}, {0, 0});
  CHECK(b.month == Month::January);
  CHECK(b.day == Weekday::Wednesday);
  CHECK(b.time == TimeBin::T6);
  auto c = derive_temporal({2015, 3, 8}, {4, 59});
  CHECK(c.month == Month::March);
  CHECK(c.day == Weekday::Sunday);
  CHECK(c.time == TimeBin::T1);
  CHECK(c.year == 2015);
}

TEST_CASE("weekday of leap day and century boundaries") {
  CHECK(CivilDate{2016, 2, 29}.weekday() == Weekday::Monday);
  CHECK(CivilDate{2000, 1, 1}.weekday() == Weekday::Saturday);
  CHECK_FALSE(CivilDate{2015, 2, 29}.valid());
}

TEST_CASE("map_crime_type with the default Denver mapping") {
  const auto m = default_mapping(SchemaId::Denver);
  CHECK(map_crime_type("theft-from-motor-vehicle", m) == CrimeCategory::Theft);
  CHECK(map_crime_type("white-collar-crime", m) == CrimeCategory::WhiteCollarCrime);
  CHECK(map_crime_type("  Drug-Alcohol ", m) == CrimeCategory::DrugAlcohol);
  CHECK(map_crime_type("auto-theft", m) == CrimeCategory::Theft);
  CHECK(m.size() == 14);
}

TEST_CASE("unmapped category") {
  try {
    map_crime_type("jaywalking", TypeMapping{});
    FAIL("expected UnmappedCategory");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnmappedCategory);
  }
}

TEST_CASE("LA default mapping covers the whole vocabulary") {
  const auto m = default_mapping(SchemaId::LosAngeles);
  CHECK(m.size() == la_category_vocabulary().size());
  std::set<CrimeCategory> used;
  for (const auto& [raw, c] : m.entries()) used.insert(c);
  CHECK(used.size() == 6);
  CHECK(map_crime_type("BATTERY - SIMPLE ASSAULT", m) == CrimeCategory::Assault);
  CHECK(map_crime_type("VEHICLE - STOLEN", m) == CrimeCategory::Theft);
  CHECK(map_crime_type("THEFT OF IDENTITY", m) == CrimeCategory::WhiteCollarCrime);
  CHECK(la_keyword_category("never seen before") == CrimeCategory::OtherCrimes);
}

TEST_CASE("checked-in mapping files match the built-in defaults") {
  for (auto schema : {SchemaId::Denver, SchemaId::LosAngeles}) {
    const auto path = std::string(CRIMEPAT_DATA) + "/" + std::string(schema_name(schema)) + "_mapping.json";
    const auto loaded = TypeMapping::load(path);
    CHECK(loaded.entries() == default_mapping(schema).entries());
  }
}

TEST_CASE("mapping JSON rejects unknown target names") {
  CHECK_THROWS_AS(TypeMapping::from_json({{"x", "Burglary"}}), Error);
  const auto m = TypeMapping::from_json({{"X", "theft"}});
  CHECK(m.find("x") == CrimeCategory::Theft);
  CHECK(TypeMapping::from_json(m.to_json()).entries() == m.entries());
}

namespace {

RawCrimeRecord raw(std::string category, CivilDate date, std::optional<TimeOfDay> time, std::string location) {
  RawCrimeRecord r;
  r.offense_category = std::move(category);
  r.date = date;
  r.time = time;
  r.location = std::move(location);
  r.is_crime = true;
  return r;
}

}  // namespace

TEST_CASE("preprocess_dataset composes date, time and type mapping") {
  const std::vector<RawCrimeRecord> in{raw("drug-alcohol", {2014, 6, 13}, TimeOfDay{21, 30}, "five-points")};
  const auto out = preprocess_dataset(in, SchemaId::Denver, default_mapping(SchemaId::Denver));
  REQUIRE(out.records.size() == 1);
  const auto& r = out.records[0];
  CHECK(r.type == CrimeCategory::DrugAlcohol);
  CHECK(r.month == Month::June);
  CHECK(r.day == Weekday::Friday);
  CHECK(r.time == TimeBin::T6);
  CHECK(r.location == "five-points");
  CHECK(r.year == 2014);
  CHECK(r.hour == 21);
}

TEST_CASE("preprocess_dataset on empty input") {
  const auto out = preprocess_dataset({}, SchemaId::Denver, default_mapping(SchemaId::Denver));
  CHECK(out.records.empty());
  CHECK(out.report.input_records == 0);
}

TEST_CASE("unmapped records are excluded and counted") {
  std::vector<RawCrimeRecord> in;
  for (int i = 0; i < 199; ++i) in.push_back(raw("theft", {2015, 1, 2}, TimeOfDay{10, 0}, "cbd"));
  in.push_back(raw("jaywalking", {2015, 1, 2}, TimeOfDay{10, 0}, "cbd"));
  TypeMapping m;
  m.set("theft", CrimeCategory::Theft);
  const auto out = preprocess_dataset(in, SchemaId::Denver, m);
  CHECK(out.records.size() == 199);
  CHECK(out.report.rejected == 1);
  CHECK(out.report.unmapped_categories.at("jaywalking") == 1);
  CHECK(out.report.rejection_reasons.at("unmapped-category") == 1);
}

TEST_CASE("rejection threshold aborts") {
  std::vector<RawCrimeRecord> in{raw("theft", {2015, 1, 2}, TimeOfDay{10, 0}, "cbd"),
                                 raw("jaywalking", {2015, 1, 2}, TimeOfDay{10, 0}, "cbd")};
  TypeMapping m;
  m.set("theft", CrimeCategory::Theft);
  try {
    preprocess_dataset(in, SchemaId::Denver, m);
    FAIL("expected RejectionThresholdExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RejectionThresholdExceeded);
  }
  CHECK(preprocess_dataset(in, SchemaId::Denver, m, {0.5}).records.size() == 1);
}

TEST_CASE("records without a time of day are dropped") {
  std::vector<RawCrimeRecord> in{raw("larceny", {2015, 1, 2}, std::nullopt, "cbd"),
                                 raw("larceny", {2015, 1, 2}, TimeOfDay{0, 30}, "cbd")};
  const auto out = preprocess_dataset(in, SchemaId::Denver, default_mapping(SchemaId::Denver), {0.5});
  REQUIRE(out.records.size() == 1);
  CHECK(out.records[0].time == TimeBin::T6);
  CHECK(out.report.rejection_reasons.at("missing-time") == 1);
}

TEST_CASE("every output record has values inside the canonical domains") {
  SeededRng rng(7);
  std::vector<RawCrimeRecord> in;
  for (int i = 0; i < 500; ++i) {
    const int y = 2014 + static_cast<int>(rng.below(5));
    const int mo = 1 + static_cast<int>(rng.below(12));
    const int d = 1 + static_cast<int>(rng.below(28));
    in.push_back(raw("larceny", {y, mo, d}, TimeOfDay{static_cast<int>(rng.below(24)), 0}, "cbd"));
  }
  const auto out = preprocess_dataset(in, SchemaId::Denver, default_mapping(SchemaId::Denver));
  REQUIRE(out.records.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto& r = out.records[i];
    CHECK(r.time == bin_time(in[i].time->hour));
    CHECK(r.day == in[i].date.weekday());
    CHECK(static_cast<int>(r.month) == in[i].date.month);
  }
}
