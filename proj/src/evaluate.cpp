#include "crimepat/evaluate.hpp"

#include <atomic>
#include <thread>

#include "crimepat/csv.hpp"
#include "crimepat/decision_tree.hpp"
#include "crimepat/error.hpp"
#include "crimepat/naive_bayes.hpp"
#include "crimepat/random.hpp"
#include "crimepat/text.hpp"

namespace crimepat {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f1_of(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

nlohmann::ordered_json metrics_json(const ClassMetrics& m) {
  nlohmann::ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["support"] = m.support;
  j["display"] = {{"precision", format_fixed(m.precision, 2)},
                  {"recall", format_fixed(m.recall, 2)},
                  {"f1", format_fixed(m.f1, 2)}};
  return j;
}

}  // namespace

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t s = 0;
  for (const auto& row : cells) {
    for (auto v : row) s += v;
  }
  return s;
}

std::size_t ConfusionMatrix::trace() const noexcept {
  std::size_t s = 0;
  for (std::size_t i = 0; i < kCategoryCount; ++i) s += cells[i][i];
  return s;
}

std::size_t ConfusionMatrix::row_sum(std::size_t actual) const noexcept {
  std::size_t s = 0;
  for (auto v : cells[actual]) s += v;
  return s;
}

std::size_t ConfusionMatrix::col_sum(std::size_t predicted) const noexcept {
  std::size_t s = 0;
  for (const auto& row : cells) s += row[predicted];
  return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) noexcept {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    for (std::size_t j = 0; j < kCategoryCount; ++j) cells[i][j] += other.cells[i][j];
  }
  return *this;
}

nlohmann::ordered_json ConfusionMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["classes"] = nlohmann::ordered_json::array();
  for (auto c : kAllCategories) j["classes"].push_back(category_name(c));
  j["cells"] = cells;
  return j;
}

ConfusionMatrix ConfusionMatrix::from_json(const nlohmann::json& j) {
  try {
    const auto& classes = j.at("classes");
    if (classes.size() != kCategoryCount) {
      throw Error(ErrorCode::MalformedInput, "confusion matrix must list 6 classes");
    }
    // Accept any class order in the file; store in canonical order.
    std::array<std::size_t, kCategoryCount> slot{};
    std::array<bool, kCategoryCount> seen{};
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
      auto c = parse_category(classes[i].get<std::string>());
      if (!c || seen[category_index(*c)]) throw Error(ErrorCode::MalformedInput, "bad or repeated class label");
      seen[category_index(*c)] = true;
      slot[i] = category_index(*c);
    }
    const auto& rows = j.at("cells");
    if (rows.size() != kCategoryCount) throw Error(ErrorCode::MalformedInput, "confusion matrix must be 6x6");
    ConfusionMatrix m;
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
      if (rows[i].size() != kCategoryCount) throw Error(ErrorCode::MalformedInput, "confusion matrix must be 6x6");
      for (std::size_t k = 0; k < kCategoryCount; ++k) {
        const auto& v = rows[i][k];
        if (!v.is_number_integer() || v.get<long long>() < 0) {
          throw Error(ErrorCode::MalformedInput, "cells must be non-negative integers");
        }
        m.cells[slot[i]][slot[k]] = v.get<std::size_t>();
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
}

ConfusionMatrix confusion_matrix(std::span<const CrimeCategory> actual, std::span<const CrimeCategory> predicted) {
  if (actual.size() != predicted.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(actual.size()) + " actual vs " +
                                               std::to_string(predicted.size()) + " predicted labels");
  }
  if (actual.empty()) throw Error(ErrorCode::EmptyInput, "no labels");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < actual.size(); ++i) m.add(actual[i], predicted[i]);
  return m;
}

EvaluationReport classification_report(const ConfusionMatrix& matrix) {
  const std::size_t total = matrix.total();
  if (total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix is empty");
  EvaluationReport r;
  r.matrix = matrix;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    auto& m = r.per_class[c];
    const std::size_t tp = matrix.cells[c][c];
    m.support = matrix.row_sum(c);
    m.precision = ratio(tp, matrix.col_sum(c));
    m.recall = ratio(tp, m.support);
    m.f1 = f1_of(m.precision, m.recall);
    const double w = static_cast<double>(m.support) / static_cast<double>(total);
    r.weighted_avg.precision += w * m.precision;
    r.weighted_avg.recall += w * m.recall;
    r.weighted_avg.f1 += w * m.f1;
  }
  r.weighted_avg.support = total;
  r.accuracy = ratio(matrix.trace(), total);
  return r;
}

nlohmann::ordered_json EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["matrix"] = matrix.to_json();
  j["per_class"] = nlohmann::ordered_json::object();
  for (auto c : kAllCategories) j["per_class"][std::string(category_name(c))] = metrics_json(per_class[category_index(c)]);
  j["weighted_avg"] = metrics_json(weighted_avg);
  j["accuracy"] = accuracy;
  j["accuracy_display"] = format_fixed(accuracy, 2);
  return j;
}

void EvaluationReport::write_table_csv(std::ostream& out) const {
  out << "class,precision,recall,f1,support\n";
  for (auto c : kAllCategories) {
    const auto& m = per_class[category_index(c)];
    write_csv_row(out, {std::string(category_name(c)), format_fixed(m.precision, 2), format_fixed(m.recall, 2),
                        format_fixed(m.f1, 2), std::to_string(m.support)});
  }
  write_csv_row(out, {"Avg/Total", format_fixed(weighted_avg.precision, 2), format_fixed(weighted_avg.recall, 2),
                      format_fixed(weighted_avg.f1, 2), std::to_string(weighted_avg.support)});
}

std::string_view model_kind_name(ModelKind kind) noexcept {
  return kind == ModelKind::NaiveBayes ? "nb" : "dt";
}

nlohmann::ordered_json CrossValidationResult::to_json() const {
  nlohmann::ordered_json j;
  j["folds"] = fold_accuracies.size();
  j["mean_accuracy"] = mean_accuracy;
  j["fold_accuracies"] = fold_accuracies;
  j["fold_sizes"] = fold_sizes;
  j["pooled"] = pooled.to_json();
  return j;
}

ConfusionMatrix train_and_test(std::span<const UnifiedCrimeRecord> train, std::span<const UnifiedCrimeRecord> test,
                               ModelKind kind, const ModelParams& params) {
  ConfusionMatrix m;
  if (kind == ModelKind::NaiveBayes) {
    const auto model = nb_train(train, params.alpha);
    for (const auto& r : test) m.add(r.type, nb_predict(model, features_of(r)).category);
  } else {
    const auto tree = dt_train(train, params.max_leaves);
    for (const auto& r : test) m.add(r.type, dt_predict(tree, features_of(r)));
  }
  return m;
}

std::vector<std::size_t> assign_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
  const auto perm = seeded_permutation(n, seed);
  std::vector<std::size_t> fold(n);
  for (std::size_t i = 0; i < n; ++i) fold[perm[i]] = i % k;
  return fold;
}

CrossValidationResult cross_validate(std::span<const UnifiedCrimeRecord> dataset, ModelKind kind,
                                     const ModelParams& params, std::size_t k, std::uint64_t seed,
                                     std::size_t threads) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 folds");
  if (dataset.size() < k) {
    throw Error(ErrorCode::TooFewRecords,
                std::to_string(dataset.size()) + " records cannot fill " + std::to_string(k) + " folds");
  }
  const auto fold = assign_folds(dataset.size(), k, seed);
  std::vector<ConfusionMatrix> matrices(k);

  auto run_fold = [&](std::size_t f) {
    std::vector<UnifiedCrimeRecord> train, test;
    for (std::size_t i = 0; i < dataset.size(); ++i) (fold[i] == f ? test : train).push_back(dataset[i]);
    matrices[f] = train_and_test(train, test, kind, params);
  };

  threads = std::max<std::size_t>(1, std::min(threads, k));
  if (threads == 1) {
    for (std::size_t f = 0; f < k; ++f) run_fold(f);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t f; (f = next.fetch_add(1)) < k;) run_fold(f);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  CrossValidationResult out;
  ConfusionMatrix pooled;
  double acc_sum = 0.0;
  for (std::size_t f = 0; f < k; ++f) {
    const double acc = ratio(matrices[f].trace(), matrices[f].total());
    out.fold_accuracies.push_back(acc);
    out.fold_sizes.push_back(matrices[f].total());
    acc_sum += acc;
    pooled += matrices[f];
  }
  out.mean_accuracy = acc_sum / static_cast<double>(k);
  out.pooled = classification_report(pooled);
  return out;
}

}  // namespace crimepat
