#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crimepat/preprocess.hpp"

namespace crimepat {

struct FeatureVector {
  Month month = Month::January;
  Weekday day = Weekday::Monday;
  TimeBin time = TimeBin::T1;
  std::string location;
};

FeatureVector features_of(const UnifiedCrimeRecord& r);

// Features in tie-break order.
enum class Feature : std::uint8_t { Month = 0, Day, Time, Location };
inline constexpr std::size_t kFeatureCount = 4;
inline constexpr std::array<Feature, kFeatureCount> kAllFeatures = {Feature::Month, Feature::Day, Feature::Time,
                                                                    Feature::Location};

std::string_view feature_name(Feature f) noexcept;
std::string feature_value(const FeatureVector& x, Feature f);

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
};

struct TrainTestSplit {
  std::vector<UnifiedCrimeRecord> train;
  std::vector<UnifiedCrimeRecord> test;
};

// Seeded permutation; the first round-half-up(train_fraction * n) records train,
// clamped so both sides are non-empty. Throws DatasetTooSmall (n < 2) or
// InvalidArgument (fraction outside (0, 1)).
TrainTestSplit split_train_test(std::span<const UnifiedCrimeRecord> dataset, const SplitSpec& spec);

// Shannon entropy in bits, 0 log 0 = 0. Throws AllZeroCounts.
double entropy(std::span<const std::size_t> label_counts);

}  // namespace crimepat
