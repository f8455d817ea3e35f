#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "crimepat/categories.hpp"
#include "crimepat/preprocess.hpp"

namespace crimepat {

// cells[actual][predicted] over the six categories in id order.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, kCategoryCount>, kCategoryCount> cells{};

  void add(CrimeCategory actual, CrimeCategory predicted, std::size_t n = 1) noexcept {
    cells[category_index(actual)][category_index(predicted)] += n;
  }
  std::size_t total() const noexcept;
  std::size_t trace() const noexcept;
  std::size_t row_sum(std::size_t actual) const noexcept;
  std::size_t col_sum(std::size_t predicted) const noexcept;

  ConfusionMatrix& operator+=(const ConfusionMatrix& other) noexcept;
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

  // {"classes": [...], "cells": [[...], ...]} (row = actual).
  nlohmann::ordered_json to_json() const;
  static ConfusionMatrix from_json(const nlohmann::json& j);
};

// Throws LengthMismatch or EmptyInput.
ConfusionMatrix confusion_matrix(std::span<const CrimeCategory> actual, std::span<const CrimeCategory> predicted);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvaluationReport {
  ConfusionMatrix matrix;
  std::array<ClassMetrics, kCategoryCount> per_class{};
  ClassMetrics weighted_avg;  // support = total
  double accuracy = 0.0;

  nlohmann::ordered_json to_json() const;
  // Precision/recall/F1/support table with two-decimal metrics and an Avg/Total row.
  void write_table_csv(std::ostream& out) const;
};

// Empty rows or columns give 0 recall or precision. Throws EmptyMatrix.
EvaluationReport classification_report(const ConfusionMatrix& matrix);

enum class ModelKind { NaiveBayes, DecisionTree };

std::string_view model_kind_name(ModelKind kind) noexcept;

struct ModelParams {
  double alpha = 1.0;
  std::size_t max_leaves = 10;
};

struct CrossValidationResult {
  double mean_accuracy = 0.0;
  std::vector<double> fold_accuracies;
  std::vector<std::size_t> fold_sizes;
  EvaluationReport pooled;

  nlohmann::ordered_json to_json() const;
};

// Train on `train`, predict every record in `test`.
ConfusionMatrix train_and_test(std::span<const UnifiedCrimeRecord> train, std::span<const UnifiedCrimeRecord> test,
                               ModelKind kind, const ModelParams& params);

// Record perm[i] goes to fold i % k for a seeded permutation, so fold sizes
// differ by at most one.
std::vector<std::size_t> assign_folds(std::size_t n, std::size_t k, std::uint64_t seed);

// Folds may run on `threads` workers; results are merged in fold order.
// Throws InvalidArgument (k < 2) or TooFewRecords (n < k).
CrossValidationResult cross_validate(std::span<const UnifiedCrimeRecord> dataset, ModelKind kind,
                                     const ModelParams& params, std::size_t k = 5, std::uint64_t seed = 42,
                                     std::size_t threads = 1);

}  // namespace crimepat
