#include "crimepat/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "crimepat/csv.hpp"
#include "crimepat/error.hpp"
#include "crimepat/text.hpp"

namespace crimepat {
namespace {

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ s.size();
    for (ItemId id : s) {
      h ^= id + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

using CandidateIndex = std::unordered_map<Itemset, std::size_t, ItemsetHash>;

struct WeightedTransaction {
  Itemset items;
  std::size_t multiplicity = 1;
};

Itemset canonical(const Itemset& t) {
  Itemset out = t;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// C(n, k), saturating at `cap`.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (acc > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(acc));
}

void count_transaction(const WeightedTransaction& t, std::size_t k, const std::vector<Itemset>& candidates,
                       const CandidateIndex& index, std::vector<std::size_t>& counts, Itemset& buffer,
                       std::vector<std::size_t>& pos) {
  const std::size_t m = t.items.size();
  if (m < k) return;
  if (binomial_capped(m, k, candidates.size()) <= candidates.size()) {
    // Enumerate k-subsets of the transaction in lexicographic order.
    pos.resize(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = i;
    buffer.resize(k);
    for (;;) {
      for (std::size_t i = 0; i < k; ++i) buffer[i] = t.items[pos[i]];
      auto it = index.find(buffer);
      if (it != index.end()) counts[it->second] += t.multiplicity;
      std::size_t i = k;
      while (i > 0 && pos[i - 1] == m - k + (i - 1)) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  } else {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto& cand = candidates[c];
      if (std::includes(t.items.begin(), t.items.end(), cand.begin(), cand.end())) counts[c] += t.multiplicity;
    }
  }
}

// Support counts for every candidate. Transactions are split into contiguous
// chunks, one per thread; integer sums make the result independent of the split.
std::vector<std::size_t> count_candidates(const std::vector<WeightedTransaction>& db, std::size_t k,
                                          const std::vector<Itemset>& candidates, std::size_t threads) {
  CandidateIndex index;
  index.reserve(candidates.size() * 2);
  for (std::size_t i = 0; i < candidates.size(); ++i) index.emplace(candidates[i], i);

  threads = std::max<std::size_t>(1, std::min(threads, db.size()));
  std::vector<std::vector<std::size_t>> partial(threads, std::vector<std::size_t>(candidates.size(), 0));
  auto work = [&](std::size_t w) {
    const std::size_t begin = db.size() * w / threads;
    const std::size_t end = db.size() * (w + 1) / threads;
    Itemset buffer;
    std::vector<std::size_t> pos;
    for (std::size_t i = begin; i < end; ++i) count_transaction(db[i], k, candidates, index, partial[w], buffer, pos);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  std::vector<std::size_t> total(candidates.size(), 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += p[i];
  }
  return total;
}

// Join frequent (k-1)-itemsets sharing a (k-2)-prefix, then drop candidates with
// an infrequent (k-1)-subset. `frequent` is lexicographically sorted.
std::vector<Itemset> generate_candidates(const std::vector<Itemset>& frequent) {
  std::vector<Itemset> out;
  if (frequent.empty()) return out;
  const std::size_t km1 = frequent.front().size();
  std::unordered_set<Itemset, ItemsetHash> known(frequent.begin(), frequent.end());
  Itemset subset(km1);
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    for (std::size_t j = i + 1; j < frequent.size(); ++j) {
      const auto& a = frequent[i];
      const auto& b = frequent[j];
      if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
      Itemset cand = a;
      cand.push_back(b.back());
      bool keep = true;
      // Dropping either of the last two items yields a or b, both frequent.
      for (std::size_t drop = 0; keep && drop + 2 < cand.size(); ++drop) {
        std::size_t w = 0;
        for (std::size_t p = 0; p < cand.size(); ++p) {
          if (p != drop) subset[w++] = cand[p];
        }
        keep = known.contains(subset);
      }
      if (keep) out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace

SupportResult support(const Itemset& itemset, std::span<const Itemset> transactions) {
  if (itemset.empty()) throw Error(ErrorCode::InvalidArgument, "support of an empty itemset");
  if (transactions.empty()) throw Error(ErrorCode::EmptyTransactionList, "no transactions");
  const Itemset needle = canonical(itemset);
  SupportResult r;
  for (const auto& t : transactions) {
    const Itemset hay = canonical(t);
    if (std::includes(hay.begin(), hay.end(), needle.begin(), needle.end())) ++r.count;
  }
  r.fraction = static_cast<double>(r.count) / static_cast<double>(transactions.size());
  return r;
}

std::size_t min_count_for(double min_sup, std::size_t n) {
  const double exact = min_sup * static_cast<double>(n);
  auto c = static_cast<std::size_t>(std::ceil(exact * (1.0 - 1e-12)));
  return std::max<std::size_t>(c, 1);
}

FrequentItemsets mine_frequent(std::span<const Itemset> transactions, double min_sup,
                               const MiningOptions& options) {
  if (transactions.empty()) throw Error(ErrorCode::EmptyTransactionList, "no transactions");
  if (!(min_sup > 0.0 && min_sup <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "min_sup must be in (0, 1], got " + std::to_string(min_sup));
  }

  FrequentItemsets result;
  result.min_sup = min_sup;
  result.dataset_size = transactions.size();
  result.min_count = min_count_for(min_sup, transactions.size());
  const double n = static_cast<double>(transactions.size());

  std::vector<WeightedTransaction> db;
  db.reserve(transactions.size());
  if (options.deduplicate) {
    std::map<Itemset, std::size_t> groups;
    for (const auto& t : transactions) ++groups[canonical(t)];
    for (auto& [items, m] : groups) db.push_back({items, m});
  } else {
    for (const auto& t : transactions) db.push_back({canonical(t), 1});
  }

  // Level 1.
  std::map<ItemId, std::size_t> item_counts;
  for (const auto& t : db) {
    for (ItemId id : t.items) item_counts[id] += t.multiplicity;
  }
  std::vector<Itemset> frequent;
  std::unordered_set<ItemId> frequent_items;
  for (const auto& [id, c] : item_counts) {
    if (c >= result.min_count) {
      frequent.push_back({id});
      frequent_items.insert(id);
      result.itemsets.push_back({{id}, c, static_cast<double>(c) / n});
    }
  }
  result.levels.push_back(frequent.size());

  // Infrequent items cannot appear in any larger frequent itemset.
  for (auto& t : db) {
    std::erase_if(t.items, [&](ItemId id) { return !frequent_items.contains(id); });
  }
  std::erase_if(db, [](const WeightedTransaction& t) { return t.items.size() < 2; });

  for (std::size_t k = 2; !frequent.empty(); ++k) {
    auto candidates = generate_candidates(frequent);
    if (candidates.empty()) break;
    const auto counts = count_candidates(db, k, candidates, options.threads);
    frequent.clear();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (counts[i] >= result.min_count) {
        result.itemsets.push_back({candidates[i], counts[i], static_cast<double>(counts[i]) / n});
        frequent.push_back(std::move(candidates[i]));
      }
    }
    if (frequent.empty()) break;
    result.levels.push_back(frequent.size());
    std::erase_if(db, [k](const WeightedTransaction& t) { return t.items.size() <= k; });
  }
  return result;
}

HotspotVocabulary::HotspotVocabulary(std::span<const UnifiedCrimeRecord> dataset) {
  for (const auto& r : dataset) locations_.push_back(r.location);
  std::sort(locations_.begin(), locations_.end());
  locations_.erase(std::unique(locations_.begin(), locations_.end()), locations_.end());
}

ItemId HotspotVocabulary::location_item(const std::string& location) const {
  auto it = std::lower_bound(locations_.begin(), locations_.end(), location);
  if (it == locations_.end() || *it != location) {
    throw Error(ErrorCode::InvalidArgument, "location '" + location + "' not in vocabulary");
  }
  return static_cast<ItemId>(it - locations_.begin());
}

ItemId HotspotVocabulary::day_item(Weekday d) const noexcept {
  return static_cast<ItemId>(locations_.size() + static_cast<std::size_t>(d));
}

ItemId HotspotVocabulary::time_item(TimeBin t) const noexcept {
  return static_cast<ItemId>(locations_.size() + 7 + static_cast<std::size_t>(t) - 1);
}

ItemTag HotspotVocabulary::tag(ItemId id) const noexcept {
  if (id < locations_.size()) return ItemTag::Location;
  if (id < locations_.size() + 7) return ItemTag::Day;
  return ItemTag::Time;
}

Weekday HotspotVocabulary::day(ItemId id) const noexcept {
  return static_cast<Weekday>(id - locations_.size());
}

TimeBin HotspotVocabulary::time(ItemId id) const noexcept {
  return static_cast<TimeBin>(id - locations_.size() - 7 + 1);
}

Itemset HotspotVocabulary::transaction(const UnifiedCrimeRecord& r) const {
  return {location_item(r.location), day_item(r.day), time_item(r.time)};
}

nlohmann::ordered_json MiningRun::summary_json() const {
  nlohmann::ordered_json j;
  j["min_sup"] = min_sup;
  j["min_count"] = min_count;
  j["dataset_size"] = dataset_size;
  j["pattern_count"] = patterns.size();
  j["levels"] = levels;
  return j;
}

MiningRun mine_hotspot_patterns(std::span<const UnifiedCrimeRecord> dataset, double min_sup,
                                const MiningOptions& options) {
  if (dataset.empty()) throw Error(ErrorCode::EmptyTransactionList, "empty dataset");
  const HotspotVocabulary vocab(dataset);
  std::vector<Itemset> transactions;
  transactions.reserve(dataset.size());
  for (const auto& r : dataset) transactions.push_back(vocab.transaction(r));

  const auto mined = mine_frequent(transactions, min_sup, options);
  MiningRun run;
  run.min_sup = mined.min_sup;
  run.dataset_size = mined.dataset_size;
  run.min_count = mined.min_count;
  run.levels = mined.levels;
  for (const auto& fi : mined.itemsets) {
    if (fi.items.size() != 3) continue;
    if (vocab.tag(fi.items[0]) != ItemTag::Location || vocab.tag(fi.items[1]) != ItemTag::Day ||
        vocab.tag(fi.items[2]) != ItemTag::Time) {
      continue;
    }
    run.patterns.push_back(
        {vocab.location(fi.items[0]), vocab.day(fi.items[1]), vocab.time(fi.items[2]), fi.support, fi.count});
  }
  std::sort(run.patterns.begin(), run.patterns.end(), [](const FrequentPattern& a, const FrequentPattern& b) {
    return std::tie(a.location, a.day, a.time) < std::tie(b.location, b.day, b.time);
  });
  return run;
}

void write_patterns_csv(std::ostream& out, const MiningRun& run) {
  out << "location,day,time,support,count\n";
  for (const auto& p : run.patterns) {
    write_csv_row(out, {p.location, std::string(weekday_name(p.day)), std::string(time_bin_name(p.time)),
                        format_fixed(p.support, 3), std::to_string(p.count)});
  }
}

}  // namespace crimepat
