// Acceptance suite: one PASS/FAIL line per criterion. Criterion 9 needs the
// public Denver and Los Angeles crime CSVs (CRIMEPAT_DENVER_CSV,
// CRIMEPAT_LA_CSV, optional CRIMEPAT_LA_EXCLUDE as a ';'-separated list) and is
// reported as INFO without affecting the exit status.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "apriori_oracle.hpp"
#include "apriori_properties.hpp"
#include "crimepat/apriori.hpp"
#include "crimepat/cli.hpp"
#include "crimepat/dataset.hpp"
#include "crimepat/decision_tree.hpp"
#include "crimepat/evaluate.hpp"
#include "crimepat/ingestion.hpp"
#include "crimepat/naive_bayes.hpp"
#include "crimepat/stats.hpp"
#include "nb_oracle.hpp"
#include "support.hpp"

using namespace crimepat;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  bool skipped = false;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  void note(const std::string& s) { note_ = s; }
  Outcome done() const {
    if (failure_.empty()) return {true, note_};
    return {false, note_.empty() ? failure_ : failure_ + " [" + note_ + "]"};
  }

 private:
  std::string failure_;
  std::string note_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int decimals = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(decimals);
  s << v;
  return s.str();
}

// Every mining run made by the suite, for the property checks. Runs sharing a
// group id mine the same transactions.
struct LoggedRun {
  int group;
  FrequentItemsets run;
};

std::vector<LoggedRun>& mining_log() {
  static std::vector<LoggedRun> runs;
  return runs;
}

FrequentItemsets mine_logged(int group, std::span<const Itemset> t, double s, const MiningOptions& o = {}) {
  auto run = mine_frequent(t, s, o);
  mining_log().push_back({group, run});
  return run;
}

Outcome criterion1() {
  Checker c;
  const auto t0 = Clock::now();
  std::ifstream in(CRIMEPAT_FIXTURES "/denver_nb_confusion.json");
  const auto r = classification_report(ConfusionMatrix::from_json(nlohmann::json::parse(in)));
  const auto near = [](double got, double want) { return std::abs(got - want) <= 0.005; };
  struct Row {
    CrimeCategory c;
    double p, r, f;
    std::size_t support;
  };
  const Row expected[] = {{CrimeCategory::Assault, 0.00, 0.00, 0.00, 2067},
                        {CrimeCategory::DrugAlcohol, 0.31, 0.01, 0.02, 3387},
                        {CrimeCategory::OtherCrimes, 0.37, 0.12, 0.18, 8808},
                        {CrimeCategory::PublicDisorder, 0.00, 0.00, 0.00, 7578},
                        {CrimeCategory::Theft, 0.52, 0.97, 0.68, 23485},
                        {CrimeCategory::WhiteCollarCrime, 0.00, 0.00, 0.00, 1003}};
  for (const auto& row : expected) {
    const auto& m = r.per_class[category_index(row.c)];
    const std::string name(category_name(row.c));
    c.expect(near(m.precision, row.p), name + " precision " + fmt(m.precision));
    c.expect(near(m.recall, row.r), name + " recall " + fmt(m.recall));
    c.expect(near(m.f1, row.f), name + " f1 " + fmt(m.f1));
    c.expect(m.support == row.support, name + " support " + std::to_string(m.support));
  }
  c.expect(near(r.weighted_avg.precision, 0.36), "weighted precision " + fmt(r.weighted_avg.precision));
  c.expect(near(r.weighted_avg.recall, 0.51), "weighted recall " + fmt(r.weighted_avg.recall));
  c.expect(near(r.weighted_avg.f1, 0.38), "weighted f1 " + fmt(r.weighted_avg.f1));
  c.expect(r.matrix.trace() == 23788 && r.matrix.total() == 46328, "trace/total");
  c.expect(near(r.accuracy, 0.51), "accuracy " + fmt(r.accuracy));
  const double t = seconds_since(t0);
  c.expect(t < 1.0, "runtime " + fmt(t, 3) + " s");
  c.note("accuracy " + fmt(r.accuracy) + " (23788/46328), weighted " + fmt(r.weighted_avg.precision, 2) + "/" +
         fmt(r.weighted_avg.recall, 2) + "/" + fmt(r.weighted_avg.f1, 2) + ", " + fmt(t, 3) + " s");
  return c.done();
}

Outcome criterion2() {
  Checker c;
  const auto t0 = Clock::now();
  SeededRng rng(2002);
  std::size_t compared = 0;
  for (int instance = 0; instance < 200; ++instance) {
    const std::size_t n = 1 + rng.below(12);
    const std::size_t m = 1 + rng.below(8);
    std::vector<Itemset> t(n);
    for (auto& tx : t) {
      for (ItemId i = 0; i < m; ++i) {
        if (rng.below(2)) tx.push_back(i);
      }
    }
    for (std::size_t tenth : {2, 4, 6, 8, 10}) {
      const auto run = mine_logged(instance, t, static_cast<double>(tenth) / 10.0);
      std::map<oracle::Items, std::size_t> got;
      for (const auto& f : run.itemsets) got[f.items] = f.count;
      const auto want = oracle::all_frequent(t, oracle::min_count_exact(tenth, 10, n));
      c.expect(got == want, "instance " + std::to_string(instance) + " min_sup 0." + std::to_string(tenth));
      ++compared;
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 10.0, "runtime " + fmt(secs, 3) + " s");
  c.note(std::to_string(compared) + " runs set-equal to exhaustive enumeration, " + fmt(secs, 3) + " s");
  return c.done();
}

Outcome criterion4() {
  Checker c;
  SeededRng rng(4004);
  double worst = 0.0, worst_sum = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto train = testing::random_dataset(rng, 1 + rng.below(20), 1 + rng.below(5), 1 + rng.below(6));
    const double alpha = 0.1 + static_cast<double>(rng.below(20)) / 10.0;
    const auto model = nb_train(train, alpha);
    for (const auto& probe : testing::random_dataset(rng, 10, 7)) {
      const auto x = features_of(probe);
      const auto p = nb_predict(model, x);
      const auto want = oracle::nb_posterior(train, x, alpha);
      c.expect(p.posterior.size() == want.size(), "class count mismatch");
      double z = 0.0;
      for (const auto& [cat, prob] : p.posterior) {
        worst = std::max(worst, std::abs(prob - want.at(cat)));
        z += prob;
      }
      worst_sum = std::max(worst_sum, std::abs(z - 1.0));
    }
  }
  c.expect(worst <= 1e-9, "max posterior error " + std::to_string(worst));
  c.expect(worst_sum <= 1e-9, "max |sum - 1| " + std::to_string(worst_sum));
  std::ostringstream s;
  s << "100 training sets, max posterior error " << worst << ", max |sum-1| " << worst_sum;
  c.note(s.str());
  return c.done();
}

Outcome criterion5() {
  Checker c;
  SeededRng rng(5005);
  std::size_t trees = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto data = testing::random_dataset(rng, 2 + rng.below(150), 2 + rng.below(8));
    for (std::size_t cap : {2, 5, 10}) {
      const auto tree = dt_train(data, cap);
      ++trees;
      c.expect(tree.leaf_count() <= cap, "leaf cap exceeded");
      for (const auto& node : tree.nodes()) {
        if (node.leaf) continue;
        c.expect(node.gain > 0.0, "non-positive split gain");
        // Recompute the gain from the children's training distributions.
        const auto& l = tree.nodes()[node.true_child].class_counts;
        c.expect(std::abs(information_gain(node.class_counts, l) - node.gain) < 1e-12, "stored gain mismatch");
      }
    }
  }
  const std::vector<std::size_t> counts{3, 1};
  const double h = entropy(counts);
  c.expect(std::abs(h - 0.8113) <= 1e-4, "entropy {3,1} = " + fmt(h, 6));
  c.note(std::to_string(trees) + " trees within leaf caps with positive gains, entropy{3,1} = " + fmt(h, 4));
  return c.done();
}

Outcome criterion6() {
  Checker c;
  std::map<TimeBin, int> hours;
  for (int h = 0; h < 24; ++h) ++hours[bin_time(h)];
  c.expect(hours.size() == 6, "bins used: " + std::to_string(hours.size()));
  for (const auto& [bin, n] : hours) c.expect(n == 4, std::string(time_bin_name(bin)) + " has " + std::to_string(n));
  c.expect(bin_time(0) == TimeBin::T6, "hour 0");
  c.expect(bin_time(21) == TimeBin::T6, "hour 21");
  c.expect(bin_time(5) == TimeBin::T2, "hour 5");
  c.note("24 hours, 6 bins of 4, 0->T6, 21->T6, 5->T2");
  return c.done();
}

struct CliRun {
  int code;
  std::string out;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "crimepat");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

Outcome criterion7() {
  Checker c;
  const std::string fx = CRIMEPAT_FIXTURES;
  const std::string synth = fx + "/synthetic_1000.jsonl";
  const auto root = fs::temp_directory_path() / "crimepat-acceptance-determinism";
  fs::remove_all(root);
  struct Step {
    std::vector<std::string> args;
    std::vector<std::string> files;  // written under the run directory
  };
  auto steps = [&](const fs::path& d) {
    const auto f = [&](const char* n) { return (d / n).string(); };
    return std::vector<Step>{
        {{"ingest", "--input", fx + "/denver_small.csv", "--schema", "denver", "--output", f("raw.jsonl")},
         {"raw.jsonl", "raw.jsonl.report.json"}},
        {{"preprocess", "--input", f("raw.jsonl"), "--schema", "denver", "--output", f("d.jsonl")},
         {"d.jsonl", "d.jsonl.report.json"}},
        {{"stats", "--dataset", synth, "--attribute", "month", "--by", "type", "--output", f("x.csv")}, {"x.csv"}},
        {{"mine", "--dataset", synth, "--min-sup", "0.003", "--output", f("p.csv")}, {"p.csv", "p.csv.summary.json"}},
        {{"train", "--dataset", synth, "--kind", "nb", "--output", f("nb.json"), "--test-report", f("nbt.json")},
         {"nb.json", "nbt.json"}},
        {{"train", "--dataset", synth, "--kind", "dt", "--output", f("dt.json")}, {"dt.json"}},
        {{"predict", "--model", f("nb.json"), "--month", "June", "--day", "Friday", "--time", "T6", "--location",
          "five-points", "--output", f("pred.json")},
         {"pred.json"}},
        {{"evaluate", "--dataset", synth, "--kind", "dt", "--output", f("cv.json"), "--table", f("cv.csv")},
         {"cv.json", "cv.csv"}},
        {{"demographics", "--dataset", f("d.jsonl"), "--demographics", fx + "/denver_demographics_78.csv", "--top", "2",
          "--bottom", "2", "--output",
          f("demo.csv"), "--json", f("demo.json")},
         {"demo.csv", "demo.json"}},
    };
  };
  std::size_t compared = 0;
  const fs::path a = root / "a", b = root / "b";
  fs::create_directories(a);
  fs::create_directories(b);
  const auto sa = steps(a), sb = steps(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    c.expect(invoke(sa[i].args).code == 0, sa[i].args[0] + " failed");
    c.expect(invoke(sb[i].args).code == 0, sb[i].args[0] + " failed");
    for (const auto& file : sa[i].files) {
      c.expect(testing::slurp(a / file) == testing::slurp(b / file), file + " differs between runs");
      ++compared;
    }
  }
  const auto m1 = invoke({"mine", "--dataset", synth, "--min-sup", "0.002", "--threads", "1"});
  const auto m4 = invoke({"mine", "--dataset", synth, "--min-sup", "0.002", "--threads", "4"});
  c.expect(m1.code == 0 && m4.code == 0 && m1.out == m4.out, "mine --threads 4 differs from --threads 1");

  // Library-level check on a larger transaction set.
  const auto data = load_unified_jsonl(synth);
  const HotspotVocabulary vocab(data);
  std::vector<Itemset> tx;
  for (const auto& r : data) tx.push_back(vocab.transaction(r));
  const auto one = mine_logged(-1, tx, 0.002, {1, true});
  const auto four = mine_logged(-1, tx, 0.002, {4, true});
  bool same = one.levels == four.levels && one.itemsets.size() == four.itemsets.size();
  for (std::size_t i = 0; same && i < one.itemsets.size(); ++i) {
    same = one.itemsets[i].items == four.itemsets[i].items && one.itemsets[i].count == four.itemsets[i].count &&
           one.itemsets[i].support == four.itemsets[i].support;
  }
  c.expect(same, "mine_frequent threads 4 differs from threads 1");
  c.note(std::to_string(compared) + " output files byte-identical across reruns; threads 4 == threads 1");
  fs::remove_all(root);
  return c.done();
}

Outcome criterion8() {
  Checker c;
  const std::array<Attribute, 5> attrs{Attribute::Month, Attribute::Day, Attribute::Time, Attribute::Location,
                                      Attribute::Type};
  SeededRng rng(8008);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = testing::random_dataset(rng, 1 + rng.below(300), 2 + rng.below(10));
    for (auto a : attrs) {
      const auto fa = frequency_table(data, a);
      double pct = 0.0;
      for (const auto& row : fa.rows) pct += row.percentage;
      worst = std::max(worst, std::abs(pct - 100.0));
      std::map<std::string, std::size_t> fa_counts;
      for (const auto& row : fa.rows) fa_counts[row.value] = row.count;
      for (auto b : attrs) {
        if (a == b) continue;
        const auto x = crosstab(data, a, b);
        std::map<std::string, std::size_t> rows, cols;
        for (std::size_t i = 0; i < x.row_labels.size(); ++i) {
          rows[x.row_labels[i]] = std::accumulate(x.cells[i].begin(), x.cells[i].end(), std::size_t{0});
          for (std::size_t j = 0; j < x.col_labels.size(); ++j) cols[x.col_labels[j]] += x.cells[i][j];
        }
        std::map<std::string, std::size_t> fb_counts;
        for (const auto& row : frequency_table(data, b).rows) fb_counts[row.value] = row.count;
        c.expect(rows == fa_counts, "row marginals differ");
        c.expect(cols == fb_counts, "column marginals differ");
      }
    }
  }
  c.expect(worst <= 0.01, "percentage sum off by " + std::to_string(worst));
  c.note("50 datasets, all marginals equal, max |sum% - 100| = " + fmt(worst, 12));
  return c.done();
}

Outcome criterion3() {
  Checker c;
  // A min-sup ladder over the synthetic hotspot transactions joins the runs
  // already logged by the other criteria.
  const auto data = load_unified_jsonl(CRIMEPAT_FIXTURES "/synthetic_1000.jsonl");
  const HotspotVocabulary vocab(data);
  std::vector<Itemset> tx;
  for (const auto& r : data) tx.push_back(vocab.transaction(r));
  for (double s : {0.001, 0.002, 0.005, 0.01, 0.04, 0.06, 0.2}) mine_logged(-2, tx, s);

  const auto& log = mining_log();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const auto violation = oracle::antimonotone_violation(log[i].run);
    c.expect(violation.empty(), "run " + std::to_string(i) + ": " + violation);
    if (i > 0 && log[i].group == log[i - 1].group && log[i].run.min_sup > log[i - 1].run.min_sup) {
      c.expect(oracle::minsup_monotone(log[i - 1].run, log[i].run),
               "min-sup monotonicity broken at run " + std::to_string(i));
      ++pairs;
    }
  }
  c.note(std::to_string(log.size()) + " runs anti-monotone; " + std::to_string(pairs) + " threshold pairs nested");
  return c.done();
}

Outcome criterion10() {
  Checker c;
  const auto t0 = Clock::now();
  const auto data = load_unified_jsonl(CRIMEPAT_FIXTURES "/synthetic_1000.jsonl");
  c.expect(data.size() == 1000, "fixture size " + std::to_string(data.size()));
  const auto hit = mine_hotspot_patterns(data, 0.04);
  bool found = false;
  for (const auto& p : hit.patterns) {
    found = found || (p.location == "five-points" && p.day == Weekday::Friday && p.time == TimeBin::T6 &&
                      std::abs(p.support - 0.05) < 1e-12);
  }
  c.expect(found, "planted pattern not found at 0.04");
  const auto miss = mine_hotspot_patterns(data, 0.06);
  bool missed = true;
  for (const auto& p : miss.patterns) missed = missed && !(p.location == "five-points" && p.day == Weekday::Friday);
  c.expect(missed, "planted pattern reported at 0.06");
  const auto nb = cross_validate(data, ModelKind::NaiveBayes, {1.0, 10}, 5, 42);
  const auto dt = cross_validate(data, ModelKind::DecisionTree, {1.0, 10}, 5, 42);
  c.expect(nb.mean_accuracy >= 0.99, "nb CV accuracy " + fmt(nb.mean_accuracy));
  c.expect(dt.mean_accuracy >= 0.99, "dt CV accuracy " + fmt(dt.mean_accuracy));
  const double secs = seconds_since(t0);
  c.expect(secs < 5.0, "runtime " + fmt(secs, 3) + " s");
  c.note("planted triple at 0.050 found at 0.04, absent at 0.06; CV accuracy nb " + fmt(nb.mean_accuracy, 3) +
         ", dt " + fmt(dt.mean_accuracy, 3) + ", " + fmt(secs, 3) + " s");
  return c.done();
}

std::vector<std::string> split_list(const char* s) {
  std::vector<std::string> out;
  if (s == nullptr) return out;
  std::string item;
  for (const char* p = s;; ++p) {
    if (*p == ';' || *p == '\0') {
      if (!item.empty()) out.push_back(item);
      item.clear();
      if (*p == '\0') break;
    } else {
      item.push_back(*p);
    }
  }
  return out;
}

Outcome criterion9() {
  const char* denver = std::getenv("CRIMEPAT_DENVER_CSV");
  const char* la = std::getenv("CRIMEPAT_LA_CSV");
  if (denver == nullptr && la == nullptr) {
    return {true, "real datasets not supplied (set CRIMEPAT_DENVER_CSV / CRIMEPAT_LA_CSV)", true};
  }
  Checker c;
  std::ostringstream notes;
  struct City {
    const char* path;
    SchemaId schema;
    std::size_t expected_records;
    double min_sup;
    std::size_t expected_patterns;
    double nb_acc, dt_acc;
  };
  const City cities[] = {{denver, SchemaId::Denver, 231640, 0.0012, 62, 0.51, 0.42},
                         {la, SchemaId::LosAngeles, 196767, 0.0018, 59, 0.54, 0.43}};
  const auto exclude = split_list(std::getenv("CRIMEPAT_LA_EXCLUDE"));
  for (const auto& city : cities) {
    if (city.path == nullptr) continue;
    const std::string name(schema_name(city.schema));
    const auto load = load_crime_csv(city.path, city.schema);
    const auto kept = filter_crimes(load.records, city.schema, exclude);
    c.expect(kept.size() == city.expected_records, name + " post-filter " + std::to_string(kept.size()));
    const auto pre = preprocess_dataset(kept, city.schema, default_mapping(city.schema), {1.0});
    const auto run = mine_hotspot_patterns(pre.records, city.min_sup, {4, true});
    c.expect(run.patterns.size() == city.expected_patterns, name + " patterns " + std::to_string(run.patterns.size()));
    const auto nb = cross_validate(pre.records, ModelKind::NaiveBayes, {}, 5, 42, 4);
    const auto dt = cross_validate(pre.records, ModelKind::DecisionTree, {}, 5, 42, 4);
    c.expect(std::abs(nb.mean_accuracy - city.nb_acc) <= 0.03, name + " nb accuracy " + fmt(nb.mean_accuracy, 3));
    c.expect(std::abs(dt.mean_accuracy - city.dt_acc) <= 0.03, name + " dt accuracy " + fmt(dt.mean_accuracy, 3));
    notes << name << ": " << kept.size() << " records, " << run.patterns.size() << " patterns, nb "
          << fmt(nb.mean_accuracy, 3) << ", dt " << fmt(dt.mean_accuracy, 3) << ". ";
  }
  c.note(notes.str());
  return c.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {4, criterion4}, {5, criterion5}, {6, criterion6},
      {7, criterion7}, {8, criterion8}, {10, criterion10}, {3, criterion3}, {9, criterion9}};
  std::map<int, Outcome> results;
  for (const auto& [id, fn] : criteria) {
    try {
      results[id] = fn();
    } catch (const std::exception& e) {
      results[id] = {false, std::string("exception: ") + e.what()};
    }
  }
  int failures = 0;
  for (const auto& [id, r] : results) {
    const bool informational = id == 9;
    std::string status = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
    if (informational && !r.skipped) status = "INFO " + status;
    std::cout << "criterion " << id << ": " << status << " - " << r.detail << '\n';
    if (!informational && !r.pass) ++failures;
  }
  std::cout << (failures == 0 ? "acceptance: all binding criteria passed" : "acceptance: FAILED") << '\n';
  return failures == 0 ? 0 : 1;
}
