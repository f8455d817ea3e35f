#include "crimepat/demographics.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "crimepat/csv.hpp"
#include "crimepat/error.hpp"
#include "crimepat/text.hpp"

namespace crimepat {
namespace {

std::vector<std::pair<std::string, double>> metrics_of(const DemographicsRecord& d) {
  std::vector<std::pair<std::string, double>> m{
      {"population", static_cast<double>(d.population_total)},
      {"male", static_cast<double>(d.male)},
      {"female", static_cast<double>(d.female)},
      {"housing_units_total", static_cast<double>(d.housing_units_total)},
      {"occupied_units", static_cast<double>(d.occupied_units)},
      {"vacant_units", static_cast<double>(d.vacant_units)},
      {"owned_units", static_cast<double>(d.owned_units)},
      {"rented_units", static_cast<double>(d.rented_units)},
  };
  for (const auto& [label, count] : d.age_brackets) m.emplace_back("age_" + label, static_cast<double>(count));
  return m;
}

std::vector<GroupAggregate> aggregate(const std::vector<NeighborhoodProfile>& profiles, const std::string& group) {
  std::vector<GroupAggregate> out;
  std::size_t members = 0;
  for (const auto& p : profiles) {
    if (p.group != group) continue;
    ++members;
    for (std::size_t i = 0; i < p.metrics.size(); ++i) {
      if (out.size() <= i) out.push_back({p.metrics[i].first, 0.0, 0.0});
      out[i].sum += p.metrics[i].second;
    }
  }
  for (auto& a : out) a.mean = members ? a.sum / static_cast<double>(members) : 0.0;
  return out;
}

std::string render(double v) {
  if (v == static_cast<double>(static_cast<long long>(v))) return std::to_string(static_cast<long long>(v));
  return format_fixed(v, 6);
}

}  // namespace

std::vector<NeighborhoodCrimeRate> crime_rate_by_location(std::span<const UnifiedCrimeRecord> dataset) {
  if (dataset.empty()) throw Error(ErrorCode::EmptyDataset, "no crime records");
  std::map<std::string, std::size_t> counts;
  for (const auto& r : dataset) ++counts[r.location];
  std::vector<NeighborhoodCrimeRate> out;
  for (const auto& [name, c] : counts) {
    out.push_back({name, c, static_cast<double>(c) / static_cast<double>(dataset.size())});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.crime_count > b.crime_count; });
  return out;
}

GroupComparison compare_groups(std::span<const NeighborhoodCrimeRate> rates,
                               std::span<const DemographicsRecord> demographics, const CompareOptions& options) {
  std::unordered_map<std::string, const DemographicsRecord*> by_name;
  for (const auto& d : demographics) by_name.emplace(normalize_location(d.neighborhood), &d);

  auto resolve = [&](const std::string& name) -> const DemographicsRecord& {
    auto it = by_name.find(normalize_location(name));
    if (it != by_name.end()) return *it->second;
    std::string suggestion;
    std::size_t best = std::string::npos;
    for (const auto& d : demographics) {
      const auto dist = edit_distance(normalize_location(name), d.neighborhood);
      if (dist < best || (dist == best && d.neighborhood < suggestion)) {
        best = dist;
        suggestion = d.neighborhood;
      }
    }
    std::string msg = "neighborhood '" + name + "' has no demographics row";
    if (!suggestion.empty()) msg += " (closest: '" + suggestion + "')";
    throw Error(ErrorCode::UnmatchedNeighborhood, msg);
  };

  struct Ranked {
    const NeighborhoodCrimeRate* rate;
    double per_capita;
  };
  std::vector<Ranked> ranked;
  for (const auto& r : rates) {
    if (!options.per_capita) {
      ranked.push_back({&r, 0.0});
      continue;
    }
    const auto& d = resolve(r.neighborhood);
    if (d.population_total == 0) continue;
    ranked.push_back({&r, static_cast<double>(r.crime_count) / static_cast<double>(d.population_total)});
  }
  auto before = [&](const Ranked& a, const Ranked& b) {
    if (options.per_capita && a.per_capita != b.per_capita) return a.per_capita > b.per_capita;
    if (a.rate->crime_count != b.rate->crime_count) return a.rate->crime_count > b.rate->crime_count;
    return a.rate->neighborhood < b.rate->neighborhood;
  };
  std::sort(ranked.begin(), ranked.end(), before);

  if (options.top_k + options.bottom_k > ranked.size()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(options.top_k) + " dangerous + " +
                                                std::to_string(options.bottom_k) + " safe neighborhoods requested, " +
                                                std::to_string(ranked.size()) + " ranked");
  }

  GroupComparison out;
  auto add = [&](const Ranked& r, const char* group) {
    const auto& d = resolve(r.rate->neighborhood);
    NeighborhoodProfile p;
    p.group = group;
    p.neighborhood = r.rate->neighborhood;
    p.display_name = d.display_name;
    p.crime_count = r.rate->crime_count;
    p.crime_share = r.rate->crime_share;
    p.crimes_per_capita =
        d.population_total ? static_cast<double>(r.rate->crime_count) / static_cast<double>(d.population_total) : 0.0;
    p.metrics = metrics_of(d);
    p.race = d.race;
    out.profiles.push_back(std::move(p));
  };
  for (std::size_t i = 0; i < options.top_k; ++i) {
    out.dangerous.push_back(ranked[i].rate->neighborhood);
    add(ranked[i], "dangerous");
  }
  for (std::size_t i = ranked.size() - options.bottom_k; i < ranked.size(); ++i) {
    out.safe.push_back(ranked[i].rate->neighborhood);
    add(ranked[i], "safe");
  }
  out.dangerous_aggregates = aggregate(out.profiles, "dangerous");
  out.safe_aggregates = aggregate(out.profiles, "safe");
  return out;
}

nlohmann::ordered_json GroupComparison::to_json() const {
  nlohmann::ordered_json j;
  j["dangerous"] = dangerous;
  j["safe"] = safe;
  j["neighborhoods"] = nlohmann::ordered_json::array();
  for (const auto& p : profiles) {
    nlohmann::ordered_json jp;
    jp["group"] = p.group;
    jp["neighborhood"] = p.neighborhood;
    jp["display_name"] = p.display_name;
    jp["crime_count"] = p.crime_count;
    jp["crime_share"] = p.crime_share;
    jp["crimes_per_capita"] = p.crimes_per_capita;
    jp["metrics"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : p.metrics) jp["metrics"][k] = v;
    jp["race"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : p.race) jp["race"][k] = v;
    j["neighborhoods"].push_back(std::move(jp));
  }
  auto agg = [](const std::vector<GroupAggregate>& a) {
    nlohmann::ordered_json ja = nlohmann::ordered_json::object();
    for (const auto& g : a) ja[g.metric] = {{"sum", g.sum}, {"mean", g.mean}};
    return ja;
  };
  j["aggregates"] = {{"dangerous", agg(dangerous_aggregates)}, {"safe", agg(safe_aggregates)}};
  return j;
}

void write_rates_csv(std::ostream& out, std::span<const NeighborhoodCrimeRate> rates) {
  out << "neighborhood,crime_count,crime_share\n";
  for (const auto& r : rates) {
    write_csv_row(out, {r.neighborhood, std::to_string(r.crime_count), format_fixed(r.crime_share, 6)});
  }
}

void write_comparison_csv(std::ostream& out, const GroupComparison& comparison) {
  out << "group,neighborhood,metric,value\n";
  for (const auto& p : comparison.profiles) {
    write_csv_row(out, {p.group, p.neighborhood, "crime_count", std::to_string(p.crime_count)});
    write_csv_row(out, {p.group, p.neighborhood, "crime_share", format_fixed(p.crime_share, 6)});
    for (const auto& [k, v] : p.metrics) write_csv_row(out, {p.group, p.neighborhood, k, render(v)});
    for (const auto& [k, v] : p.race) write_csv_row(out, {p.group, p.neighborhood, k, render(v)});
  }
  auto agg = [&](const std::string& group, const std::vector<GroupAggregate>& a) {
    for (const auto& g : a) write_csv_row(out, {group, "(sum)", g.metric, render(g.sum)});
    for (const auto& g : a) write_csv_row(out, {group, "(mean)", g.metric, render(g.mean)});
  };
  agg("dangerous", comparison.dangerous_aggregates);
  agg("safe", comparison.safe_aggregates);
}

}  // namespace crimepat
