#pragma once

// Exhaustive frequent-itemset enumeration: every non-empty subset of the item
// universe is counted directly against every transaction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace crimepat::oracle {

using Items = std::vector<std::uint32_t>;

inline std::map<Items, std::size_t> all_frequent(const std::vector<Items>& transactions, std::size_t min_count) {
  std::set<std::uint32_t> universe;
  for (const auto& t : transactions) universe.insert(t.begin(), t.end());
  const std::vector<std::uint32_t> items(universe.begin(), universe.end());
  std::map<Items, std::size_t> out;
  const std::size_t m = items.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    Items s;
    for (std::size_t b = 0; b < m; ++b) {
      if (mask & (std::uint64_t{1} << b)) s.push_back(items[b]);
    }
    std::size_t count = 0;
    for (const auto& t : transactions) {
      bool all = true;
      for (auto x : s) all = all && std::find(t.begin(), t.end(), x) != t.end();
      count += all;
    }
    if (count >= min_count && count > 0) out[s] = count;
  }
  return out;
}

// Smallest count c with c / n >= min_sup, by exact rational comparison of
// min_sup given as numerator / denominator.
inline std::size_t min_count_exact(std::size_t num, std::size_t den, std::size_t n) {
  std::size_t c = 0;
  while (c * den < num * n) ++c;
  return std::max<std::size_t>(c, 1);
}

}  // namespace crimepat::oracle
