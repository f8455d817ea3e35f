#include <algorithm>
#include <cmath>

#include "crimepat/classify.hpp"
#include "crimepat/error.hpp"
#include "crimepat/random.hpp"

namespace crimepat {

FeatureVector features_of(const UnifiedCrimeRecord& r) { return {r.month, r.day, r.time, r.location}; }

std::string_view feature_name(Feature f) noexcept {
  switch (f) {
    case Feature::Month: return "month";
    case Feature::Day: return "day";
    case Feature::Time: return "time";
    case Feature::Location: return "location";
  }
  return "";
}

std::string feature_value(const FeatureVector& x, Feature f) {
  switch (f) {
    case Feature::Month: return std::string(month_name(x.month));
    case Feature::Day: return std::string(weekday_name(x.day));
    case Feature::Time: return std::string(time_bin_name(x.time));
    case Feature::Location: return x.location;
  }
  return {};
}

TrainTestSplit split_train_test(std::span<const UnifiedCrimeRecord> dataset, const SplitSpec& spec) {
  if (dataset.size() < 2) throw Error(ErrorCode::DatasetTooSmall, "need at least 2 records to split");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "train fraction must be in (0, 1)");
  }
  const std::size_t n = dataset.size();
  auto n_train = static_cast<std::size_t>(std::floor(spec.train_fraction * static_cast<double>(n) + 0.5));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  const auto perm = seeded_permutation(n, spec.seed);
  TrainTestSplit out;
  out.train.reserve(n_train);
  out.test.reserve(n - n_train);
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_train ? out.train : out.test).push_back(dataset[perm[i]]);
  }
  return out;
}

double entropy(std::span<const std::size_t> label_counts) {
  std::size_t total = 0;
  for (auto c : label_counts) total += c;
  if (total == 0) throw Error(ErrorCode::AllZeroCounts, "entropy of an empty distribution");
  double h = 0.0;
  for (auto c : label_counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace crimepat
