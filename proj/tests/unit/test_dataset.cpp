#include <doctest.h>

#include <sstream>

#include "crimepat/dataset.hpp"
#include "crimepat/error.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace crimepat;

TEST_CASE("unified JSONL round trip") {
  SeededRng rng(3);
  const auto data = testing::random_dataset(rng, 50);
  std::stringstream s;
  write_unified_jsonl(s, data);
  CHECK(read_unified_jsonl(s) == data);
}

TEST_CASE("raw JSONL round trip") {
  RawCrimeRecord a;
  a.offense_category = "theft";
  a.date = {2014, 6, 13};
  a.time = TimeOfDay{21, 30};
  a.location = "cbd";
  a.is_crime = true;
  a.source_row = 7;
  RawCrimeRecord b = a;
  b.time.reset();
  b.is_crime.reset();
  const std::vector<RawCrimeRecord> data{a, b};
  std::stringstream s;
  write_raw_jsonl(s, data);
  CHECK(read_raw_jsonl(s) == data);
}

TEST_CASE("malformed JSONL reports the line") {
  std::istringstream s(
      "{\"type\":\"Theft\",\"month\":\"June\",\"day\":\"Friday\",\"time\":\"T6\",\"location\":\"x\",\"year\":2014}\n"
      "{not json}\n");
  try {
    read_unified_jsonl(s);
    FAIL("expected MalformedInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedInput);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("bundled synthetic fixture equals a fresh generation") {
  const auto bundled = load_unified_jsonl(CRIMEPAT_FIXTURES "/synthetic_1000.jsonl");
  CHECK(bundled == synth::generate());
  std::ostringstream s;
  write_unified_jsonl(s, synth::generate());
  CHECK(s.str() == testing::slurp(CRIMEPAT_FIXTURES "/synthetic_1000.jsonl"));
}

TEST_CASE("synthetic fixture carries its planted structure") {
  const auto data = synth::generate();
  REQUIRE(data.size() == synth::kRecords);
  std::size_t planted = 0;
  for (const auto& r : data) {
    planted += r.location == synth::kPlantedLocation && r.day == synth::kPlantedDay && r.time == synth::kPlantedTime;
    CHECK(r.type == synth::rule_class(r.time));
    REQUIRE(r.hour);
    CHECK(bin_time(*r.hour) == r.time);
  }
  CHECK(planted == synth::kPlanted);
}
