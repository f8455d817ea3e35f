#pragma once

// Generated fixture with a planted hotspot and a planted class rule.
//
// Of 1000 records, 50 share (five-points, Friday, T6). The rest are drawn
// uniformly and never repeat that triple. Crime type is a function of the
// time bin alone, so both classifiers can learn it exactly.

#include <array>
#include <string>
#include <vector>

#include "crimepat/categories.hpp"
#include "crimepat/preprocess.hpp"
#include "crimepat/random.hpp"

namespace crimepat::synth {

inline constexpr std::size_t kRecords = 1000;
inline constexpr std::size_t kPlanted = 50;
inline constexpr std::uint64_t kSeed = 20180501;
inline constexpr std::string_view kPlantedLocation = "five-points";
inline constexpr Weekday kPlantedDay = Weekday::Friday;
inline constexpr TimeBin kPlantedTime = TimeBin::T6;

inline constexpr std::array<std::string_view, 20> kLocations = {
    "baker",          "capitol-hill",  "cbd",           "cheesman-park", "city-park",
    "civic-center",   "east-colfax",   "five-points",   "hampden",       "highland",
    "lincoln-park",   "montbello",     "north-capitol-hill", "speer",    "stapleton",
    "sunnyside",      "union-station", "washington-park", "wellshire",   "westwood"};

inline CrimeCategory rule_class(TimeBin t) { return kAllCategories[static_cast<std::size_t>(t) - 1]; }

// One hour of the given bin; bins are 4 hours wide, T6 wraps midnight.
inline int hour_in_bin(TimeBin t, std::uint64_t k) {
  static constexpr std::array<int, 4> t6 = {21, 22, 23, 0};
  if (t == TimeBin::T6) return t6[k % 4];
  return (static_cast<int>(t) - 1) * 4 + 1 + static_cast<int>(k % 4);
}

inline UnifiedCrimeRecord make_record(SeededRng& rng, std::string_view location, Weekday day, TimeBin time) {
  UnifiedCrimeRecord r;
  r.location = std::string(location);
  r.day = day;
  r.time = time;
  r.type = rule_class(time);
  r.month = static_cast<Month>(1 + rng.below(12));
  r.year = 2014 + static_cast<int>(rng.below(5));
  r.hour = hour_in_bin(time, rng.below(4));
  return r;
}

inline std::vector<UnifiedCrimeRecord> generate() {
  SeededRng rng(kSeed);
  std::vector<UnifiedCrimeRecord> pool;
  pool.reserve(kRecords);
  for (std::size_t i = 0; i < kPlanted; ++i) {
    pool.push_back(make_record(rng, kPlantedLocation, kPlantedDay, kPlantedTime));
  }
  while (pool.size() < kRecords) {
    const auto loc = kLocations[rng.below(kLocations.size())];
    const auto day = static_cast<Weekday>(rng.below(7));
    const auto time = static_cast<TimeBin>(1 + rng.below(6));
    if (loc == kPlantedLocation && day == kPlantedDay && time == kPlantedTime) continue;
    pool.push_back(make_record(rng, loc, day, time));
  }
  std::vector<UnifiedCrimeRecord> out;
  out.reserve(kRecords);
  for (std::size_t i : seeded_permutation(kRecords, kSeed + 1)) out.push_back(pool[i]);
  return out;
}

}  // namespace crimepat::synth
