#include "crimepat/decision_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "crimepat/error.hpp"

namespace crimepat {
namespace {

constexpr const char* kFormat = "dt-v1";

using Counts = std::array<std::size_t, kCategoryCount>;

CrimeCategory majority_of(const Counts& counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kCategoryCount; ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return kAllCategories[best];
}

std::size_t sum(const Counts& c) {
  std::size_t s = 0;
  for (auto v : c) s += v;
  return s;
}

// Integer codes per feature in canonical value order.
struct EncodedData {
  std::vector<std::array<std::uint32_t, kFeatureCount>> rows;
  std::vector<std::uint8_t> labels;
  std::array<std::vector<std::string>, kFeatureCount> values;
};

EncodedData encode(std::span<const UnifiedCrimeRecord> train) {
  EncodedData d;
  for (int m = 1; m <= 12; ++m) d.values[0].emplace_back(month_name(static_cast<Month>(m)));
  for (int w = 0; w < 7; ++w) d.values[1].emplace_back(weekday_name(static_cast<Weekday>(w)));
  for (int t = 1; t <= 6; ++t) d.values[2].emplace_back(time_bin_name(static_cast<TimeBin>(t)));
  auto& locs = d.values[3];
  for (const auto& r : train) locs.push_back(r.location);
  std::sort(locs.begin(), locs.end());
  locs.erase(std::unique(locs.begin(), locs.end()), locs.end());

  d.rows.reserve(train.size());
  d.labels.reserve(train.size());
  for (const auto& r : train) {
    const auto loc = static_cast<std::uint32_t>(std::lower_bound(locs.begin(), locs.end(), r.location) - locs.begin());
    d.rows.push_back({static_cast<std::uint32_t>(static_cast<int>(r.month) - 1),
                      static_cast<std::uint32_t>(r.day),
                      static_cast<std::uint32_t>(static_cast<int>(r.time) - 1), loc});
    d.labels.push_back(static_cast<std::uint8_t>(category_index(r.type)));
  }
  return d;
}

struct Split {
  double gain = 0.0;
  std::size_t feature = 0;
  std::uint32_t value = 0;
};

struct FrontierLeaf {
  std::size_t node = 0;
  std::vector<std::uint32_t> rows;
  std::optional<Split> best;
};

std::optional<Split> best_split(const EncodedData& d, const std::vector<std::uint32_t>& rows, const Counts& parent) {
  std::optional<Split> best;
  const double n = static_cast<double>(rows.size());
  const double parent_h = entropy(parent);
  if (parent_h <= 0.0) return best;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    std::vector<Counts> by_value(d.values[f].size(), Counts{});
    for (auto r : rows) ++by_value[d.rows[r][f]][d.labels[r]];
    for (std::uint32_t v = 0; v < by_value.size(); ++v) {
      const auto& t = by_value[v];
      const std::size_t nt = sum(t);
      if (nt == 0 || nt == rows.size()) continue;
      Counts rest{};
      for (std::size_t c = 0; c < kCategoryCount; ++c) rest[c] = parent[c] - t[c];
      const double gain = parent_h - (static_cast<double>(nt) / n) * entropy(t) -
                          (static_cast<double>(rows.size() - nt) / n) * entropy(rest);
      if (gain > kMinSplitGain && (!best || gain > best->gain)) best = Split{gain, f, v};
    }
  }
  return best;
}

}  // namespace

double information_gain(std::span<const std::size_t> parent, std::span<const std::size_t> left) {
  if (parent.size() != left.size()) throw Error(ErrorCode::LengthMismatch, "count vectors differ in length");
  std::vector<std::size_t> right(parent.size());
  std::size_t n = 0, nl = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (left[i] > parent[i]) throw Error(ErrorCode::InvalidArgument, "child count exceeds parent count");
    right[i] = parent[i] - left[i];
    n += parent[i];
    nl += left[i];
  }
  const double h = entropy(parent);
  double weighted = 0.0;
  if (nl > 0) weighted += static_cast<double>(nl) / static_cast<double>(n) * entropy(left);
  if (nl < n) weighted += static_cast<double>(n - nl) / static_cast<double>(n) * entropy(right);
  return h - weighted;
}

std::size_t DecisionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const auto& n) { return n.leaf; }));
}

DecisionTree dt_train(std::span<const UnifiedCrimeRecord> train, std::size_t max_leaves) {
  if (train.empty()) throw Error(ErrorCode::EmptyTrainingSet, "decision tree needs training records");
  if (max_leaves < 2) throw Error(ErrorCode::InvalidArgument, "max_leaves must be at least 2");

  const EncodedData d = encode(train);
  DecisionTree tree;
  tree.max_leaves_ = max_leaves;

  auto make_leaf = [&](std::vector<std::uint32_t> rows) {
    DecisionNode node;
    for (auto r : rows) ++node.class_counts[d.labels[r]];
    node.majority = majority_of(node.class_counts);
    tree.nodes_.push_back(node);
    FrontierLeaf leaf{tree.nodes_.size() - 1, std::move(rows), std::nullopt};
    leaf.best = best_split(d, leaf.rows, tree.nodes_.back().class_counts);
    return leaf;
  };

  std::vector<std::uint32_t> all(train.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<FrontierLeaf> frontier;  // creation order
  frontier.push_back(make_leaf(std::move(all)));

  std::size_t leaves = 1;
  while (leaves < max_leaves) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (!frontier[i].best) continue;
      if (!pick || frontier[i].best->gain > frontier[*pick].best->gain) pick = i;
    }
    if (!pick) break;

    FrontierLeaf parent = std::move(frontier[*pick]);
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(*pick));
    const Split split = *parent.best;

    std::vector<std::uint32_t> yes, no;
    for (auto r : parent.rows) (d.rows[r][split.feature] == split.value ? yes : no).push_back(r);
    parent.rows.clear();
    parent.rows.shrink_to_fit();

    auto true_leaf = make_leaf(std::move(yes));
    auto false_leaf = make_leaf(std::move(no));
    auto& node = tree.nodes_[parent.node];
    node.leaf = false;
    node.feature = kAllFeatures[split.feature];
    node.value = d.values[split.feature][split.value];
    node.gain = split.gain;
    node.true_child = true_leaf.node;
    node.false_child = false_leaf.node;
    frontier.push_back(std::move(true_leaf));
    frontier.push_back(std::move(false_leaf));
    ++leaves;
  }
  return tree;
}

CrimeCategory dt_predict(const DecisionTree& tree, const FeatureVector& x) {
  const auto& nodes = tree.nodes();
  std::size_t i = 0;
  while (!nodes[i].leaf) {
    const auto& n = nodes[i];
    i = feature_value(x, n.feature) == n.value ? n.true_child : n.false_child;
  }
  return nodes[i].majority;
}

nlohmann::ordered_json DecisionTree::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = kFormat;
  j["max_leaves"] = max_leaves_;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : nodes_) {
    nlohmann::ordered_json jn;
    jn["leaf"] = n.leaf;
    if (!n.leaf) {
      jn["feature"] = feature_name(n.feature);
      jn["value"] = n.value;
      jn["gain"] = n.gain;
      jn["true"] = n.true_child;
      jn["false"] = n.false_child;
    }
    jn["class_counts"] = n.class_counts;
    jn["majority"] = category_name(n.majority);
    j["nodes"].push_back(std::move(jn));
  }
  return j;
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat) {
      throw Error(ErrorCode::ModelFormat, "expected format " + std::string(kFormat));
    }
    DecisionTree t;
    t.max_leaves_ = j.at("max_leaves").get<std::size_t>();
    for (const auto& jn : j.at("nodes")) {
      DecisionNode n;
      n.leaf = jn.at("leaf").get<bool>();
      if (!n.leaf) {
        const auto fname = jn.at("feature").get<std::string>();
        auto it = std::find_if(kAllFeatures.begin(), kAllFeatures.end(),
                               [&](Feature f) { return feature_name(f) == fname; });
        if (it == kAllFeatures.end()) throw Error(ErrorCode::ModelFormat, "unknown feature '" + fname + "'");
        n.feature = *it;
        n.value = jn.at("value").get<std::string>();
        n.gain = jn.at("gain").get<double>();
        n.true_child = jn.at("true").get<std::size_t>();
        n.false_child = jn.at("false").get<std::size_t>();
      }
      n.class_counts = jn.at("class_counts").get<std::array<std::size_t, kCategoryCount>>();
      auto maj = parse_category(jn.at("majority").get<std::string>());
      if (!maj) throw Error(ErrorCode::ModelFormat, "bad majority class");
      n.majority = *maj;
      t.nodes_.push_back(std::move(n));
    }
    if (t.nodes_.empty()) throw Error(ErrorCode::ModelFormat, "tree has no nodes");
    // Children must point forward to distinct, otherwise unreferenced nodes.
    std::vector<int> refs(t.nodes_.size(), 0);
    for (std::size_t i = 0; i < t.nodes_.size(); ++i) {
      const auto& n = t.nodes_[i];
      if (n.leaf) continue;
      for (auto c : {n.true_child, n.false_child}) {
        if (c <= i || c >= t.nodes_.size() || refs[c]++ != 0) {
          throw Error(ErrorCode::ModelFormat, "malformed child index at node " + std::to_string(i));
        }
      }
    }
    for (std::size_t i = 1; i < refs.size(); ++i) {
      if (refs[i] != 1) throw Error(ErrorCode::ModelFormat, "unreachable node " + std::to_string(i));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ModelFormat, e.what());
  }
}

}  // namespace crimepat
