#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "crimepat/preprocess.hpp"

namespace crimepat {

using ItemId = std::uint32_t;
// Sorted ascending, no duplicates.
using Itemset = std::vector<ItemId>;

struct SupportResult {
  double fraction = 0.0;
  std::size_t count = 0;
};

// Throws EmptyTransactionList or InvalidArgument (empty itemset).
SupportResult support(const Itemset& itemset, std::span<const Itemset> transactions);

struct MiningOptions {
  std::size_t threads = 1;
  // Count each distinct transaction once with its multiplicity. Output is identical either way.
  bool deduplicate = true;
};

struct FrequentItemset {
  Itemset items;
  std::size_t count = 0;
  double support = 0.0;
};

struct FrequentItemsets {
  double min_sup = 0.0;
  std::size_t dataset_size = 0;
  std::size_t min_count = 0;            // smallest count meeting min_sup
  std::vector<FrequentItemset> itemsets;  // by size, then lexicographic
  std::vector<std::size_t> levels;        // levels[k-1] = number of frequent k-itemsets
};

// Smallest absolute count c with c / n >= min_sup (inclusive, tolerant of
// binary rounding in min_sup * n).
std::size_t min_count_for(double min_sup, std::size_t n);

// Level-wise Apriori: prefix join, subset prune, hash-based counting per level.
// Throws EmptyTransactionList, or InvalidArgument when min_sup is outside (0, 1].
FrequentItemsets mine_frequent(std::span<const Itemset> transactions, double min_sup,
                               const MiningOptions& options = {});

enum class ItemTag { Location, Day, Time };

// Item ids for (location, day, time) transactions. Ids follow the canonical item
// order: locations alphabetically, then Monday..Sunday, then T1..T6.
class HotspotVocabulary {
 public:
  explicit HotspotVocabulary(std::span<const UnifiedCrimeRecord> dataset);

  ItemId location_item(const std::string& location) const;
  ItemId day_item(Weekday d) const noexcept;
  ItemId time_item(TimeBin t) const noexcept;

  ItemTag tag(ItemId id) const noexcept;
  const std::string& location(ItemId id) const { return locations_.at(id); }
  Weekday day(ItemId id) const noexcept;
  TimeBin time(ItemId id) const noexcept;
  std::size_t size() const noexcept { return locations_.size() + 13; }

  Itemset transaction(const UnifiedCrimeRecord& r) const;

 private:
  std::vector<std::string> locations_;
};

struct FrequentPattern {
  std::string location;
  Weekday day = Weekday::Monday;
  TimeBin time = TimeBin::T1;
  double support = 0.0;
  std::size_t count = 0;
};

struct MiningRun {
  double min_sup = 0.0;
  std::size_t dataset_size = 0;
  std::size_t min_count = 0;
  std::vector<FrequentPattern> patterns;  // by location, weekday, time bin
  std::vector<std::size_t> levels;

  nlohmann::ordered_json summary_json() const;
};

// One transaction per record with items (location, day, time); reports only the
// 3-itemsets holding one item of each tag.
MiningRun mine_hotspot_patterns(std::span<const UnifiedCrimeRecord> dataset, double min_sup,
                                const MiningOptions& options = {});

// location,day,time,support,count with support at three decimals.
void write_patterns_csv(std::ostream& out, const MiningRun& run);

}  // namespace crimepat
