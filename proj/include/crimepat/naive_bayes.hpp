#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "crimepat/classify.hpp"

namespace crimepat {

// Categorical naive Bayes over (month, day, time, location). Each feature table
// reserves one extra UNSEEN slot, so for class c and feature f
//   P(v | c) = (count(v, c) + alpha) / (count(c) + alpha * (|vocab_f| + 1)).
// Only classes present in training are modelled.
class NaiveBayesModel {
 public:
  struct FeatureTable {
    std::vector<std::string> vocab;                   // sorted
    std::vector<std::vector<double>> log_prob;        // [class][vocab index]
    std::vector<double> unseen_log_prob;              // [class]
    std::unordered_map<std::string, std::size_t> index;
  };

  double alpha() const noexcept { return alpha_; }
  const std::vector<CrimeCategory>& classes() const noexcept { return classes_; }
  const std::vector<double>& log_prior() const noexcept { return log_prior_; }
  const FeatureTable& table(Feature f) const noexcept { return tables_[static_cast<std::size_t>(f)]; }

  // log P(value | classes()[class_index]) for the feature, UNSEEN slot if absent.
  double log_conditional(Feature f, std::size_t class_index, const std::string& value) const;

  nlohmann::ordered_json to_json() const;
  static NaiveBayesModel from_json(const nlohmann::json& j);

 private:
  friend NaiveBayesModel nb_train(std::span<const UnifiedCrimeRecord>, double);

  double alpha_ = 1.0;
  std::vector<CrimeCategory> classes_;
  std::vector<double> log_prior_;
  std::array<FeatureTable, kFeatureCount> tables_;
};

struct NbPrediction {
  CrimeCategory category = CrimeCategory::Assault;
  std::vector<std::pair<CrimeCategory, double>> posterior;  // model class order, sums to 1
};

// Throws EmptyTrainingSet, or InvalidArgument for alpha <= 0.
NaiveBayesModel nb_train(std::span<const UnifiedCrimeRecord> train, double alpha = 1.0);

// Argmax of log prior + sum of log conditionals; exact ties go to the lowest type id.
NbPrediction nb_predict(const NaiveBayesModel& model, const FeatureVector& x);

}  // namespace crimepat
