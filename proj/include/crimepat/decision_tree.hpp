#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crimepat/classify.hpp"

namespace crimepat {

struct DecisionNode {
  bool leaf = true;
  // Internal nodes: records with feature == value go to true_child.
  Feature feature = Feature::Month;
  std::string value;
  double gain = 0.0;
  std::size_t true_child = 0;
  std::size_t false_child = 0;
  // Training distribution reaching this node, indexed by category_index().
  std::array<std::size_t, kCategoryCount> class_counts{};
  CrimeCategory majority = CrimeCategory::Assault;
};

// Binary equality-predicate tree; node 0 is the root, children are created in
// (true, false) order.
class DecisionTree {
 public:
  const std::vector<DecisionNode>& nodes() const noexcept { return nodes_; }
  std::size_t max_leaves() const noexcept { return max_leaves_; }
  std::size_t leaf_count() const noexcept;

  nlohmann::ordered_json to_json() const;
  static DecisionTree from_json(const nlohmann::json& j);

 private:
  friend DecisionTree dt_train(std::span<const UnifiedCrimeRecord>, std::size_t);

  std::vector<DecisionNode> nodes_;
  std::size_t max_leaves_ = 10;
};

// Splits below this are treated as zero gain.
inline constexpr double kMinSplitGain = 1e-12;

// Information gain of splitting `parent` into `left` and `parent - left`.
double information_gain(std::span<const std::size_t> parent, std::span<const std::size_t> left);

// Best-first growth: repeatedly split the leaf whose best (feature == value)
// predicate has the largest entropy gain, until max_leaves leaves or no positive
// gain remains. Ties: feature order, then value order (calendar order for month
// and day, T1..T6, alphabetical locations), then the earlier-created leaf.
// Throws EmptyTrainingSet, or InvalidArgument for max_leaves < 2.
DecisionTree dt_train(std::span<const UnifiedCrimeRecord> train, std::size_t max_leaves = 10);

CrimeCategory dt_predict(const DecisionTree& tree, const FeatureVector& x);

}  // namespace crimepat
