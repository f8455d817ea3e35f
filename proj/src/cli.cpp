#include "crimepat/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "crimepat/apriori.hpp"
#include "crimepat/dataset.hpp"
#include "crimepat/decision_tree.hpp"
#include "crimepat/demographics.hpp"
#include "crimepat/error.hpp"
#include "crimepat/evaluate.hpp"
#include "crimepat/ingestion.hpp"
#include "crimepat/naive_bayes.hpp"
#include "crimepat/preprocess.hpp"
#include "crimepat/stats.hpp"
#include "crimepat/text.hpp"

namespace crimepat::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  std::string output;
  std::string config;
};

// Writes to `path`, or to `out` when path is empty or "-".
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::FileUnreadable, "cannot write " + path);
  write(file);
  file.flush();
  if (!file) throw Error(ErrorCode::FileUnreadable, "write failed for " + path);
}

void emit_json(const std::string& path, std::ostream& out, const nlohmann::ordered_json& j) {
  emit(path, out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, path + ": " + e.what());
  }
}

std::string sidecar(const std::string& output, const std::string& suffix) {
  if (output.empty() || output == "-") return {};
  return output + suffix;
}

SchemaId schema_of(const std::string& text) {
  auto s = parse_schema(text);
  if (!s) throw UsageError("--schema: unknown schema '" + text + "' (expected denver or la)");
  return *s;
}

ModelKind kind_of(const std::string& text) {
  const std::string v = to_lower(text);
  if (v == "nb" || v == "naive-bayes") return ModelKind::NaiveBayes;
  if (v == "dt" || v == "tree" || v == "decision-tree") return ModelKind::DecisionTree;
  throw UsageError("--kind: unknown model kind '" + text + "' (expected nb or dt)");
}

void add_common(CLI::App* sub, CommonFlags& common) {
  sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  sub->add_option("--threads", common.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--output", common.output, "Output file ('-' or absent: standard output)");
  sub->add_option("--config", common.config, "JSON file supplying any flag; explicit flags win");
}

// Flags taken from the --config file, placed before the explicit ones so the
// explicit ones take precedence. Top-level keys apply wherever the subcommand
// has that flag; keys nested under the subcommand name must exist on it.
std::vector<std::string> expand_config(const std::vector<std::string>& argv, CLI::App& app) {
  if (argv.size() < 2) return argv;
  const std::string& sub_name = argv[1];
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(sub_name);
  } catch (const CLI::OptionNotFound&) {
    return argv;
  }
  std::optional<std::string> config_path;
  std::set<std::string> explicit_flags;
  for (std::size_t i = 2; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (!a.starts_with("--")) continue;
    const auto eq = a.find('=');
    const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    explicit_flags.insert(name);
    if (name == "config") {
      if (eq != std::string::npos) {
        config_path = a.substr(eq + 1);
      } else if (i + 1 < argv.size()) {
        config_path = argv[i + 1];
      }
    }
  }
  if (!config_path) return argv;

  const nlohmann::json config = read_json_file(*config_path);
  if (!config.is_object()) throw UsageError("--config: top level must be a JSON object");

  std::map<std::string, nlohmann::json> values;
  for (const auto& [k, v] : config.items()) {
    if (v.is_object()) continue;
    if (sub->get_option_no_throw("--" + k) != nullptr) values[k] = v;
  }
  if (config.contains(sub_name) && config.at(sub_name).is_object()) {
    for (const auto& [k, v] : config.at(sub_name).items()) {
      if (sub->get_option_no_throw("--" + k) == nullptr) {
        throw UsageError("--config: '" + sub_name + "." + k + "' is not a flag of " + sub_name);
      }
      values[k] = v;
    }
  }

  std::vector<std::string> args{argv[0], argv[1]};
  auto scalar = [](const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  for (const auto& [k, v] : values) {
    if (k == "config" || explicit_flags.contains(k)) continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back("--" + k);
    } else if (v.is_array()) {
      for (const auto& e : v) {
        args.push_back("--" + k);
        args.push_back(scalar(e));
      }
    } else if (!v.is_null()) {
      args.push_back("--" + k);
      args.push_back(scalar(v));
    }
  }
  args.insert(args.end(), argv.begin() + 2, argv.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crime records toolkit: ingest, preprocess, stats, hotspot mining, crime-type prediction"};
  app.name(argv.empty() ? "crimepat" : fs::path(argv[0]).filename().string());
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CommonFlags common;
  std::function<void()> action;

  // ingest
  std::string in_path, schema_text;
  std::vector<std::string> exclude;
  bool no_filter = false;
  std::string report_path;
  auto* ingest = app.add_subcommand("ingest", "Parse a raw crime CSV, keep key attributes, drop non-crime rows");
  add_common(ingest, common);
  ingest->add_option("--input", in_path, "Crime CSV")->required()->check(CLI::ExistingFile);
  ingest->add_option("--schema", schema_text, "denver or la")->required();
  ingest->add_option("--exclude", exclude, "Offense category to drop (Los Angeles; repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  ingest->add_flag("--no-filter", no_filter, "Keep non-crime rows");
  ingest->add_option("--report", report_path, "Ingest report JSON (default <output>.report.json)");
  ingest->callback([&] {
    action = [&] {
      const SchemaId schema = schema_of(schema_text);
      auto load = load_crime_csv(in_path, schema);
      const std::size_t loaded = load.records.size();
      auto records = no_filter ? std::move(load.records) : filter_crimes(load.records, schema, exclude);
      emit(common.output, out, [&](std::ostream& s) { write_raw_jsonl(s, records); });
      auto report = load.report.to_json();
      report["schema"] = schema_name(schema);
      report["records_after_filter"] = records.size();
      report["records_filtered_out"] = loaded - records.size();
      const std::string path = report_path.empty() ? sidecar(common.output, ".report.json") : report_path;
      if (path.empty()) {
        err << report.dump(2) << '\n';
      } else {
        emit_json(path, out, report);
      }
    };
  });

  // preprocess
  std::string mapping_path;
  double max_reject = 0.01;
  auto* prep = app.add_subcommand("preprocess", "Map raw records to the unified categorical schema");
  add_common(prep, common);
  prep->add_option("--input", in_path, "Raw records JSONL from ingest")->required()->check(CLI::ExistingFile);
  prep->add_option("--schema", schema_text, "denver or la")->required();
  prep->add_option("--mapping", mapping_path, "Type mapping JSON (default: built-in for the schema)")
      ->check(CLI::ExistingFile);
  prep->add_option("--max-reject", max_reject, "Abort above this rejected fraction")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  prep->add_option("--report", report_path, "Preprocess report JSON (default <output>.report.json)");
  prep->callback([&] {
    action = [&] {
      const SchemaId schema = schema_of(schema_text);
      const TypeMapping mapping = mapping_path.empty() ? default_mapping(schema) : TypeMapping::load(mapping_path);
      const auto raw = load_raw_jsonl(in_path);
      const auto result = preprocess_dataset(raw, schema, mapping, {max_reject});
      emit(common.output, out, [&](std::ostream& s) { write_unified_jsonl(s, result.records); });
      const std::string path = report_path.empty() ? sidecar(common.output, ".report.json") : report_path;
      if (path.empty()) {
        err << result.report.to_json().dump(2) << '\n';
      } else {
        emit_json(path, out, result.report.to_json());
      }
    };
  });

  // stats
  std::string dataset_path, attribute_text, by_text;
  std::optional<int> year;
  std::optional<std::size_t> top, middle, bottom;
  auto* stats = app.add_subcommand("stats", "Frequency tables and crosstabs as CSV");
  add_common(stats, common);
  stats->add_option("--dataset", dataset_path, "Unified dataset JSONL")->required()->check(CLI::ExistingFile);
  stats->add_option("--attribute", attribute_text, "month, day, time, location, type or hour")->required();
  stats->add_option("--by", by_text, "Second attribute: emit a crosstab");
  stats->add_option("--year", year, "Only records from this year");
  stats->add_option("--top", top, "Location ranking: top block size");
  stats->add_option("--middle", middle, "Location ranking: middle block size");
  stats->add_option("--bottom", bottom, "Location ranking: bottom block size");
  stats->callback([&] {
    action = [&] {
      auto attr = parse_attribute(attribute_text);
      if (!attr) throw UsageError("--attribute: unknown attribute '" + attribute_text + "'");
      const auto data = load_unified_jsonl(dataset_path);
      if (top || middle || bottom) {
        if (*attr != Attribute::Location || !by_text.empty()) {
          throw UsageError("--top/--middle/--bottom apply to --attribute location without --by");
        }
        const auto table = top_and_bottom_locations(data, top.value_or(0), bottom.value_or(0), middle.value_or(0));
        emit(common.output, out, [&](std::ostream& s) { write_frequency_csv(s, table); });
        return;
      }
      if (!by_text.empty()) {
        auto by = parse_attribute(by_text);
        if (!by) throw UsageError("--by: unknown attribute '" + by_text + "'");
        if (*by == *attr) throw UsageError("--by must differ from --attribute");
        const auto table = crosstab(data, *attr, *by, year);
        if (table.empty()) err << "warning: no records after filtering\n";
        emit(common.output, out, [&](std::ostream& s) { write_crosstab_csv(s, table); });
        return;
      }
      const auto table = frequency_table(data, *attr, year);
      if (table.empty()) err << "warning: no records after filtering\n";
      emit(common.output, out, [&](std::ostream& s) { write_frequency_csv(s, table); });
    };
  });

  // mine
  std::optional<double> min_sup;
  std::optional<std::size_t> min_count;
  std::string summary_path;
  bool no_dedup = false;
  auto* mine = app.add_subcommand("mine", "Constrained (location, day, time) Apriori hotspot patterns");
  add_common(mine, common);
  mine->add_option("--dataset", dataset_path, "Unified dataset JSONL")->required()->check(CLI::ExistingFile);
  auto* sup_opt = mine->add_option("--min-sup", min_sup, "Minimum support fraction in (0, 1]");
  auto* cnt_opt = mine->add_option("--min-count", min_count, "Minimum absolute count (alternative to --min-sup)");
  sup_opt->excludes(cnt_opt);
  mine->add_option("--summary", summary_path, "Run summary JSON (default <output>.summary.json)");
  mine->add_flag("--no-dedup", no_dedup, "Count every transaction separately");
  mine->callback([&] {
    action = [&] {
      if (!min_sup && !min_count) throw UsageError("mine needs --min-sup or --min-count");
      const auto data = load_unified_jsonl(dataset_path);
      if (data.empty()) throw Error(ErrorCode::EmptyTransactionList, "dataset is empty");
      double sup = min_sup.value_or(0.0);
      if (min_count) {
        if (*min_count == 0 || *min_count > data.size()) {
          throw UsageError("--min-count must be in 1.." + std::to_string(data.size()));
        }
        sup = static_cast<double>(*min_count) / static_cast<double>(data.size());
      } else if (!(sup > 0.0 && sup <= 1.0)) {
        throw UsageError("--min-sup must be in (0, 1]");
      }
      const auto run = mine_hotspot_patterns(data, sup, {common.threads, !no_dedup});
      emit(common.output, out, [&](std::ostream& s) { write_patterns_csv(s, run); });
      const std::string path = summary_path.empty() ? sidecar(common.output, ".summary.json") : summary_path;
      if (path.empty()) {
        err << run.summary_json().dump(2) << '\n';
      } else {
        emit_json(path, out, run.summary_json());
      }
    };
  });

  // train
  std::string kind_text = "nb";
  double alpha = 1.0;
  std::size_t max_leaves = 10;
  double train_fraction = 0.8;
  bool train_all = false;
  std::string test_report;
  auto* train = app.add_subcommand("train", "Fit a naive Bayes or decision-tree model on an 80/20 split");
  add_common(train, common);
  train->add_option("--dataset", dataset_path, "Unified dataset JSONL")->required()->check(CLI::ExistingFile);
  train->add_option("--kind", kind_text, "nb or dt")->capture_default_str();
  train->add_option("--alpha", alpha, "Laplace pseudo-count")->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--max-leaves", max_leaves, "Tree leaf cap")->capture_default_str()->check(CLI::Range(2, 1 << 20));
  train->add_option("--train-fraction", train_fraction, "Training share of the split")->capture_default_str();
  train->add_flag("--all", train_all, "Train on the whole dataset (no held-out split)");
  train->add_option("--test-report", test_report, "Write an evaluation report on the held-out split");
  train->callback([&] {
    action = [&] {
      const ModelKind kind = kind_of(kind_text);
      if (common.output.empty()) throw UsageError("train needs --output");
      if (train_all && !test_report.empty()) throw UsageError("--test-report needs a held-out split (drop --all)");
      const auto data = load_unified_jsonl(dataset_path);
      std::vector<UnifiedCrimeRecord> train_set, test_set;
      if (train_all) {
        train_set = data;
      } else {
        if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw UsageError("--train-fraction must be in (0, 1)");
        auto split = split_train_test(data, {train_fraction, common.seed});
        train_set = std::move(split.train);
        test_set = std::move(split.test);
      }
      nlohmann::ordered_json model_json;
      ConfusionMatrix m;
      if (kind == ModelKind::NaiveBayes) {
        const auto model = nb_train(train_set, alpha);
        model_json = model.to_json();
        for (const auto& r : test_set) m.add(r.type, nb_predict(model, features_of(r)).category);
      } else {
        const auto tree = dt_train(train_set, max_leaves);
        model_json = tree.to_json();
        for (const auto& r : test_set) m.add(r.type, dt_predict(tree, features_of(r)));
      }
      emit_json(common.output, out, model_json);
      if (!test_report.empty()) emit_json(test_report, out, classification_report(m).to_json());
    };
  });

  // predict
  std::string model_path, month_text, day_text, time_text, location_text;
  auto* predict = app.add_subcommand("predict", "Predict the crime type (1-6) for month, day, time bin and location");
  add_common(predict, common);
  predict->add_option("--model", model_path, "Model JSON from train")->required()->check(CLI::ExistingFile);
  predict->add_option("--month", month_text, "Month name")->required();
  predict->add_option("--day", day_text, "Weekday name")->required();
  predict->add_option("--time", time_text, "Time bin T1..T6")->required();
  predict->add_option("--location", location_text, "Location name")->required();
  predict->callback([&] {
    action = [&] {
      FeatureVector x;
      auto mo = parse_month(month_text);
      auto d = parse_weekday(day_text);
      auto t = parse_time_bin(time_text);
      if (!mo) throw UsageError("--month: unknown month '" + month_text + "'");
      if (!d) throw UsageError("--day: unknown weekday '" + day_text + "'");
      if (!t) throw UsageError("--time: expected T1..T6, got '" + time_text + "'");
      x = {*mo, *d, *t, normalize_location(location_text)};
      const auto model = read_json_file(model_path);
      const std::string format = model.value("format", "");
      nlohmann::ordered_json result;
      if (format == "nb-v1") {
        const auto p = nb_predict(NaiveBayesModel::from_json(model), x);
        result["type_id"] = category_id(p.category);
        result["type"] = category_name(p.category);
        result["posterior"] = nlohmann::ordered_json::object();
        for (const auto& [c, prob] : p.posterior) result["posterior"][std::string(category_name(c))] = prob;
      } else if (format == "dt-v1") {
        const auto c = dt_predict(DecisionTree::from_json(model), x);
        result["type_id"] = category_id(c);
        result["type"] = category_name(c);
      } else {
        throw Error(ErrorCode::ModelFormat, "unknown model format '" + format + "'");
      }
      emit(common.output, out, [&](std::ostream& s) { s << result.dump() << '\n'; });
    };
  });

  // evaluate
  std::string matrix_path, table_path;
  std::size_t folds = 5;
  auto* evaluate = app.add_subcommand("evaluate", "Metrics report from a matrix, a trained model, or k-fold CV");
  add_common(evaluate, common);
  evaluate->add_option("--matrix", matrix_path, "Confusion matrix JSON to report on")->check(CLI::ExistingFile);
  evaluate->add_option("--model", model_path, "Trained model JSON, scored on --dataset")->check(CLI::ExistingFile);
  evaluate->add_option("--dataset", dataset_path, "Unified dataset JSONL")->check(CLI::ExistingFile);
  evaluate->add_option("--kind", kind_text, "Cross-validate this model kind (nb or dt)");
  evaluate->add_option("--folds", folds, "Cross-validation folds")->capture_default_str()->check(CLI::Range(2, 1 << 30));
  evaluate->add_option("--alpha", alpha, "Laplace pseudo-count")->capture_default_str()->check(CLI::PositiveNumber);
  evaluate->add_option("--max-leaves", max_leaves, "Tree leaf cap")->capture_default_str()->check(CLI::Range(2, 1 << 20));
  evaluate->add_option("--table", table_path, "Also write the per-class metrics table as CSV");
  auto* kind_opt = evaluate->get_option("--kind");
  evaluate->callback([&] {
    action = [&] {
      const int modes = (!matrix_path.empty()) + (!model_path.empty()) + (kind_opt->count() > 0);
      if (modes != 1) throw UsageError("evaluate needs exactly one of --matrix, --model, --kind");
      nlohmann::ordered_json j;
      EvaluationReport report;
      if (!matrix_path.empty()) {
        report = classification_report(ConfusionMatrix::from_json(read_json_file(matrix_path)));
        j = report.to_json();
      } else if (!model_path.empty()) {
        if (dataset_path.empty()) throw UsageError("--model needs --dataset");
        const auto data = load_unified_jsonl(dataset_path);
        if (data.empty()) throw Error(ErrorCode::EmptyInput, "dataset is empty");
        const auto model = read_json_file(model_path);
        const std::string format = model.value("format", "");
        ConfusionMatrix m;
        if (format == "nb-v1") {
          const auto nb = NaiveBayesModel::from_json(model);
          for (const auto& r : data) m.add(r.type, nb_predict(nb, features_of(r)).category);
        } else if (format == "dt-v1") {
          const auto tree = DecisionTree::from_json(model);
          for (const auto& r : data) m.add(r.type, dt_predict(tree, features_of(r)));
        } else {
          throw Error(ErrorCode::ModelFormat, "unknown model format '" + format + "'");
        }
        report = classification_report(m);
        j = report.to_json();
      } else {
        if (dataset_path.empty()) throw UsageError("--kind needs --dataset");
        const ModelKind kind = kind_of(kind_text);
        const auto data = load_unified_jsonl(dataset_path);
        const auto cv = cross_validate(data, kind, {alpha, max_leaves}, folds, common.seed, common.threads);
        report = cv.pooled;
        j = cv.to_json();
        j["model_kind"] = model_kind_name(kind);
        j["seed"] = common.seed;
      }
      emit_json(common.output, out, j);
      if (!table_path.empty()) emit(table_path, out, [&](std::ostream& s) { report.write_table_csv(s); });
    };
  });

  // demographics
  std::string demo_path, columns_path, json_path, rates_path;
  CompareOptions compare;
  auto* demo = app.add_subcommand("demographics", "Compare demographics of the most and least dangerous neighborhoods");
  add_common(demo, common);
  demo->add_option("--dataset", dataset_path, "Unified dataset JSONL")->required()->check(CLI::ExistingFile);
  demo->add_option("--demographics", demo_path, "Neighborhood demographics CSV")->required()->check(CLI::ExistingFile);
  demo->add_option("--columns", columns_path, "Column-name mapping JSON")->check(CLI::ExistingFile);
  demo->add_option("--top", compare.top_k, "Dangerous group size")->capture_default_str();
  demo->add_option("--bottom", compare.bottom_k, "Safe group size")->capture_default_str();
  demo->add_flag("--per-capita", compare.per_capita, "Rank by crimes per resident");
  demo->add_option("--json", json_path, "Also write the comparison as JSON");
  demo->add_option("--rates", rates_path, "Also write per-neighborhood crime rates as CSV");
  demo->callback([&] {
    action = [&] {
      const DemographicsColumns columns =
          columns_path.empty() ? DemographicsColumns{} : DemographicsColumns::from_json(read_json_file(columns_path));
      const auto data = load_unified_jsonl(dataset_path);
      const auto rates = crime_rate_by_location(data);
      const auto demographics = load_demographics_csv(demo_path, columns);
      if (demographics.report.rows_rejected > 0) {
        err << "warning: " << demographics.report.rows_rejected << " demographics rows rejected: "
            << demographics.report.to_json()["rejection_reasons"].dump() << '\n';
      }
      const auto comparison = compare_groups(rates, demographics.records, compare);
      emit(common.output, out, [&](std::ostream& s) { write_comparison_csv(s, comparison); });
      if (!json_path.empty()) emit_json(json_path, out, comparison.to_json());
      if (!rates_path.empty()) emit(rates_path, out, [&](std::ostream& s) { write_rates_csv(s, rates); });
    };
  });

  try {
    const auto args = expand_config(argv, app);
    std::vector<const char*> cargs;
    cargs.reserve(args.size());
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
    if (!action) throw UsageError("no subcommand");
    action();
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace crimepat::cli
