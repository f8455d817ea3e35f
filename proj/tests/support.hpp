#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "crimepat/categories.hpp"
#include "crimepat/preprocess.hpp"
#include "crimepat/random.hpp"

namespace crimepat::testing {

inline UnifiedCrimeRecord rec(CrimeCategory type, Month month, Weekday day, TimeBin time, std::string location,
                              int year = 2014) {
  UnifiedCrimeRecord r;
  r.type = type;
  r.month = month;
  r.day = day;
  r.time = time;
  r.location = std::move(location);
  r.year = year;
  return r;
}

// Small random categorical dataset; value ranges are kept narrow so that
// collisions and ties are common.
inline std::vector<UnifiedCrimeRecord> random_dataset(SeededRng& rng, std::size_t n, std::size_t locations = 4,
                                                      std::size_t classes = 6) {
  std::vector<UnifiedCrimeRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    UnifiedCrimeRecord r;
    r.type = kAllCategories[rng.below(classes)];
    r.month = static_cast<Month>(1 + rng.below(3));
    r.day = static_cast<Weekday>(rng.below(3));
    r.time = static_cast<TimeBin>(1 + rng.below(3));
    r.location = "loc-" + std::to_string(rng.below(locations));
    r.year = 2014 + static_cast<int>(rng.below(2));
    if (rng.below(2) == 0) r.hour = static_cast<int>(rng.below(24));
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("crimepat-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace crimepat::testing
