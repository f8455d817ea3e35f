#include <doctest.h>

#include <sstream>

#include "crimepat/cli.hpp"
#include "support.hpp"

using namespace crimepat;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "crimepat");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFixtures = CRIMEPAT_FIXTURES;
const std::string kGolden = kFixtures + "/golden";

std::string p(const fs::path& dir, const char* name) { return (dir / name).string(); }

}  // namespace

TEST_CASE("unknown subcommand is a usage error") {
  const auto r = invoke({"frobnicate"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("no subcommand and help") {
  CHECK(invoke({}).code == cli::kExitUsage);
  const auto h = invoke({"mine", "--help"});
  CHECK(h.code == cli::kExitOk);
  CHECK(h.out.find("--min-sup") != std::string::npos);
}

TEST_CASE("usage errors name the offending flag") {
  const auto missing = invoke({"mine", "--min-sup", "0.1"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK(missing.err.find("--dataset") != std::string::npos);
  const auto schema = invoke({"ingest", "--input", kFixtures + "/denver_small.csv", "--schema", "paris", "--output", "-"});
  CHECK(schema.code == cli::kExitUsage);
  CHECK(schema.err.find("--schema") != std::string::npos);
  const auto sup = invoke({"mine", "--dataset", kGolden + "/denver_small.jsonl", "--min-sup", "1.5"});
  CHECK(sup.code == cli::kExitUsage);
  CHECK(sup.err.find("--min-sup") != std::string::npos);
  const auto month = invoke({"predict", "--model", kGolden + "/denver_small.jsonl", "--month", "Smarch", "--day", "Friday",
                          "--time", "T6", "--location", "cbd"});
  CHECK(month.code == cli::kExitUsage);
  CHECK(month.err.find("--month") != std::string::npos);
}

TEST_CASE("data errors exit 2 with the module error") {
  const auto dir = testing::scratch_dir("cli-data-error");
  testing::spit(dir / "bad.jsonl", "{\"type\":\"Theft\"}\n");
  const auto r = invoke({"stats", "--dataset", p(dir, "bad.jsonl"), "--attribute", "day"});
  CHECK(r.code == cli::kExitData);
  CHECK(r.err.find("MalformedInput") != std::string::npos);
  testing::spit(dir / "no_cols.csv", "A,B\n1,2\n");
  const auto m = invoke({"ingest", "--input", p(dir, "no_cols.csv"), "--schema", "denver", "--output", p(dir, "o.jsonl")});
  CHECK(m.code == cli::kExitData);
  CHECK(m.err.find("MissingColumn") != std::string::npos);
}

TEST_CASE("pipeline reproduces the golden files") {
  const auto dir = testing::scratch_dir("cli-golden");
  const std::string input = kFixtures + "/denver_small.csv";
  const std::string before = testing::slurp(input);
  REQUIRE(invoke({"ingest", "--input", input, "--schema", "denver", "--output", p(dir, "raw.jsonl")}).code == 0);
  CHECK(testing::slurp(input) == before);
  CHECK(fs::exists(dir / "raw.jsonl.report.json"));
  REQUIRE(invoke({"preprocess", "--input", p(dir, "raw.jsonl"), "--schema", "denver", "--output", p(dir, "d.jsonl")})
              .code == 0);
  CHECK(testing::slurp(dir / "d.jsonl") == testing::slurp(kGolden + "/denver_small.jsonl"));

  const auto day = invoke({"stats", "--dataset", p(dir, "d.jsonl"), "--attribute", "day"});
  REQUIRE(day.code == 0);
  CHECK(day.out == testing::slurp(kGolden + "/denver_day.csv"));
  const auto xt = invoke({"stats", "--dataset", p(dir, "d.jsonl"), "--attribute", "type", "--by", "time"});
  CHECK(xt.out == testing::slurp(kGolden + "/denver_type_by_time.csv"));

  REQUIRE(invoke({"mine", "--dataset", p(dir, "d.jsonl"), "--min-count", "2", "--output", p(dir, "pat.csv")}).code == 0);
  CHECK(testing::slurp(dir / "pat.csv") == testing::slurp(kGolden + "/denver_patterns.csv"));
  CHECK(testing::slurp(dir / "pat.csv.summary.json") == testing::slurp(kGolden + "/denver_patterns.summary.json"));
}

TEST_CASE("LA ingest with exclusions and preprocess") {
  const auto dir = testing::scratch_dir("cli-la");
  REQUIRE(invoke({"ingest", "--input", kFixtures + "/la_small.csv", "--schema", "la", "--exclude", "TRAFFIC DR #",
               "--output", p(dir, "raw.jsonl")})
              .code == 0);
  const auto report = nlohmann::json::parse(testing::slurp(dir / "raw.jsonl.report.json"));
  CHECK(report.at("rows_read") == 40);
  CHECK(report.at("records_filtered_out").get<int>() > 0);
  REQUIRE(invoke({"preprocess", "--input", p(dir, "raw.jsonl"), "--schema", "la", "--output", p(dir, "l.jsonl")}).code ==
          0);
  const auto loc = invoke({"stats", "--dataset", p(dir, "l.jsonl"), "--attribute", "location"});
  CHECK(loc.out.find("77th-street") != std::string::npos);
}

TEST_CASE("train, predict and evaluate") {
  const auto dir = testing::scratch_dir("cli-models");
  const std::string data = kFixtures + "/synthetic_1000.jsonl";
  REQUIRE(invoke({"train", "--dataset", data, "--kind", "nb", "--output", p(dir, "nb.json"), "--test-report",
               p(dir, "nb_test.json")})
              .code == 0);
  REQUIRE(invoke({"train", "--dataset", data, "--kind", "dt", "--output", p(dir, "dt.json")}).code == 0);
  for (const char* model : {"nb.json", "dt.json"}) {
    const auto r = invoke({"predict", "--model", p(dir, model), "--month", "June", "--day", "Friday", "--time", "T6",
                        "--location", "five-points"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("type_id") == 6);
    CHECK(j.at("type") == "WhiteCollarCrime");
  }
  const auto test_report = nlohmann::json::parse(testing::slurp(dir / "nb_test.json"));
  CHECK(test_report.at("matrix").at("cells").size() == 6);
  CHECK(test_report.at("accuracy").get<double>() >= 0.99);

  const auto on_data = invoke({"evaluate", "--model", p(dir, "dt.json"), "--dataset", data});
  REQUIRE(on_data.code == 0);
  CHECK(nlohmann::json::parse(on_data.out).at("accuracy").get<double>() >= 0.99);

  const auto matrix = invoke({"evaluate", "--matrix", kFixtures + "/denver_nb_confusion.json", "--table", p(dir, "t.csv")});
  REQUIRE(matrix.code == 0);
  CHECK(nlohmann::json::parse(matrix.out).at("accuracy_display") == "0.51");
  CHECK(testing::slurp(dir / "t.csv").find("Avg/Total,0.36,0.51,0.38,46328") != std::string::npos);

  const auto both = invoke({"evaluate", "--matrix", kFixtures + "/denver_nb_confusion.json", "--kind", "nb"});
  CHECK(both.code == cli::kExitUsage);
}

TEST_CASE("reruns give byte-identical outputs") {
  const auto a = testing::scratch_dir("cli-rerun-a");
  const auto b = testing::scratch_dir("cli-rerun-b");
  const std::string data = kFixtures + "/synthetic_1000.jsonl";
  const std::string small = kGolden + "/denver_small.jsonl";
  auto both = [&](const std::vector<std::string>& args, const char* out_name, const std::string& extra) {
    auto with = [&](const fs::path& dir) {
      auto v = args;
      v.push_back("--output");
      v.push_back(p(dir, out_name));
      if (!extra.empty()) {
        v.push_back(extra);
        v.push_back(p(dir, (std::string(out_name) + ".extra").c_str()));
      }
      return invoke(v);
    };
    REQUIRE(with(a).code == 0);
    REQUIRE(with(b).code == 0);
    CHECK(testing::slurp(a / out_name) == testing::slurp(b / out_name));
    if (!extra.empty()) {
      const std::string e = std::string(out_name) + ".extra";
      CHECK(testing::slurp(a / e) == testing::slurp(b / e));
    }
  };
  both({"ingest", "--input", kFixtures + "/denver_small.csv", "--schema", "denver"}, "raw.jsonl", "--report");
  both({"stats", "--dataset", data, "--attribute", "location", "--top", "3", "--middle", "4", "--bottom", "3"},
       "rank.csv", "");
  both({"mine", "--dataset", data, "--min-sup", "0.004"}, "pat.csv", "--summary");
  both({"train", "--dataset", data, "--kind", "nb", "--seed", "7"}, "nb.json", "--test-report");
  both({"train", "--dataset", data, "--kind", "dt", "--seed", "7"}, "dt.json", "--test-report");
  both({"evaluate", "--dataset", data, "--kind", "nb", "--folds", "5"}, "cv.json", "--table");
  both({"demographics", "--dataset", small, "--demographics", kFixtures + "/denver_demographics_78.csv", "--top", "2",
        "--bottom", "2"},
       "demo.csv",
       "--json");
}

TEST_CASE("thread count does not change mining or cross-validation output") {
  const std::string data = kFixtures + "/synthetic_1000.jsonl";
  const auto m1 = invoke({"mine", "--dataset", data, "--min-sup", "0.002", "--threads", "1"});
  const auto m4 = invoke({"mine", "--dataset", data, "--min-sup", "0.002", "--threads", "4"});
  REQUIRE(m1.code == 0);
  CHECK(m1.out == m4.out);
  CHECK(m1.err == m4.err);
  const auto e1 = invoke({"evaluate", "--dataset", data, "--kind", "dt", "--threads", "1"});
  const auto e4 = invoke({"evaluate", "--dataset", data, "--kind", "dt", "--threads", "4"});
  REQUIRE(e1.code == 0);
  CHECK(e1.out == e4.out);
}

TEST_CASE("seed changes the split") {
  const auto dir = testing::scratch_dir("cli-seed");
  const std::string data = kFixtures + "/synthetic_1000.jsonl";
  invoke({"train", "--dataset", data, "--kind", "nb", "--seed", "1", "--output", p(dir, "a.json")});
  invoke({"train", "--dataset", data, "--kind", "nb", "--seed", "2", "--output", p(dir, "b.json")});
  CHECK(testing::slurp(dir / "a.json") != testing::slurp(dir / "b.json"));
}

TEST_CASE("config file supplies flags and explicit flags win") {
  const auto dir = testing::scratch_dir("cli-config");
  const std::string data = kGolden + "/denver_small.jsonl";
  testing::spit(dir / "run.json", nlohmann::json{{"dataset", data}, {"seed", 42}, {"mine", {{"min-count", 3}}}}.dump());
  const auto from_config = invoke({"mine", "--config", p(dir, "run.json")});
  REQUIRE(from_config.code == 0);
  CHECK(from_config.out == "location,day,time,support,count\nfive-points,Tuesday,T2,0.052,3\n");
  const auto overridden = invoke({"mine", "--config", p(dir, "run.json"), "--min-count", "2"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out == testing::slurp(kGolden + "/denver_patterns.csv"));
  testing::spit(dir / "bad.json", nlohmann::json{{"mine", {{"min-cuont", 3}}}}.dump());
  const auto bad = invoke({"mine", "--config", p(dir, "bad.json"), "--dataset", data});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("min-cuont") != std::string::npos);
}

TEST_CASE("demographics subcommand") {
  const auto dir = testing::scratch_dir("cli-demo");
  const auto r = invoke({"demographics", "--dataset", kGolden + "/denver_small.jsonl", "--demographics",
                      kFixtures + "/denver_demographics_78.csv", "--top", "2", "--bottom", "2", "--output",
                      p(dir, "cmp.csv"), "--json", p(dir, "cmp.json"), "--rates", p(dir, "rates.csv")});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(testing::slurp(dir / "cmp.json"));
  CHECK(j.at("dangerous").size() == 2);
  CHECK(j.at("dangerous")[0] == "five-points");
  CHECK(testing::slurp(dir / "rates.csv").starts_with("neighborhood,crime_count,crime_share\nfive-points,"));
}
