#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "crimepat/ingestion.hpp"
#include "crimepat/preprocess.hpp"

namespace crimepat {

struct NeighborhoodCrimeRate {
  std::string neighborhood;
  std::size_t crime_count = 0;
  double crime_share = 0.0;
};

// Descending count, ties alphabetical. Throws EmptyDataset.
std::vector<NeighborhoodCrimeRate> crime_rate_by_location(std::span<const UnifiedCrimeRecord> dataset);

struct NeighborhoodProfile {
  std::string group;  // "dangerous" or "safe"
  std::string neighborhood;
  std::string display_name;
  std::size_t crime_count = 0;
  double crime_share = 0.0;
  double crimes_per_capita = 0.0;  // 0 when population is 0
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, double>> race;  // echoed, never aggregated
};

struct GroupAggregate {
  std::string metric;
  double sum = 0.0;
  double mean = 0.0;
};

struct GroupComparison {
  std::vector<std::string> dangerous;
  std::vector<std::string> safe;
  std::vector<NeighborhoodProfile> profiles;  // dangerous block then safe block, rank order
  std::vector<GroupAggregate> dangerous_aggregates;
  std::vector<GroupAggregate> safe_aggregates;

  nlohmann::ordered_json to_json() const;
};

struct CompareOptions {
  std::size_t top_k = 3;
  std::size_t bottom_k = 3;
  // Rank by crimes per resident instead of raw count.
  bool per_capita = false;
};

// Names are matched after normalize_location(). Throws UnmatchedNeighborhood
// (with the closest demographics name) or InvalidArgument when top_k + bottom_k
// exceeds the number of ranked neighborhoods.
GroupComparison compare_groups(std::span<const NeighborhoodCrimeRate> rates,
                               std::span<const DemographicsRecord> demographics, const CompareOptions& options = {});

void write_rates_csv(std::ostream& out, std::span<const NeighborhoodCrimeRate> rates);
// group,neighborhood,metric,value; aggregate rows use neighborhood "(sum)" / "(mean)".
void write_comparison_csv(std::ostream& out, const GroupComparison& comparison);

}  // namespace crimepat
