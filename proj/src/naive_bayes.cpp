#include "crimepat/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "crimepat/error.hpp"

namespace crimepat {
namespace {

constexpr const char* kFormat = "nb-v1";

void build_index(NaiveBayesModel::FeatureTable& t) {
  t.index.clear();
  for (std::size_t i = 0; i < t.vocab.size(); ++i) t.index.emplace(t.vocab[i], i);
}

}  // namespace

NaiveBayesModel nb_train(std::span<const UnifiedCrimeRecord> train, double alpha) {
  if (train.empty()) throw Error(ErrorCode::EmptyTrainingSet, "naive Bayes needs training records");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  }

  std::array<std::size_t, kCategoryCount> class_counts{};
  for (const auto& r : train) ++class_counts[category_index(r.type)];

  NaiveBayesModel model;
  model.alpha_ = alpha;
  std::array<std::size_t, kCategoryCount> slot{};
  for (auto c : kAllCategories) {
    if (class_counts[category_index(c)] == 0) continue;
    slot[category_index(c)] = model.classes_.size();
    model.classes_.push_back(c);
    model.log_prior_.push_back(std::log(static_cast<double>(class_counts[category_index(c)]) /
                                        static_cast<double>(train.size())));
  }
  const std::size_t n_classes = model.classes_.size();

  for (Feature f : kAllFeatures) {
    auto& table = model.tables_[static_cast<std::size_t>(f)];
    std::map<std::string, std::vector<std::size_t>> counts;
    for (const auto& r : train) {
      auto& row = counts[feature_value(features_of(r), f)];
      row.resize(n_classes, 0);
      ++row[slot[category_index(r.type)]];
    }
    table.log_prob.assign(n_classes, {});
    table.unseen_log_prob.assign(n_classes, 0.0);
    for (const auto& [value, _] : counts) table.vocab.push_back(value);
    const double slots = static_cast<double>(table.vocab.size() + 1);
    for (std::size_t c = 0; c < n_classes; ++c) {
      const double denom = static_cast<double>(class_counts[category_index(model.classes_[c])]) + alpha * slots;
      table.log_prob[c].reserve(table.vocab.size());
      for (const auto& [value, row] : counts) {
        table.log_prob[c].push_back(std::log((static_cast<double>(row[c]) + alpha) / denom));
      }
      table.unseen_log_prob[c] = std::log(alpha / denom);
    }
    build_index(table);
  }
  return model;
}

double NaiveBayesModel::log_conditional(Feature f, std::size_t class_index, const std::string& value) const {
  const auto& t = tables_[static_cast<std::size_t>(f)];
  auto it = t.index.find(value);
  if (it == t.index.end()) return t.unseen_log_prob[class_index];
  return t.log_prob[class_index][it->second];
}

NbPrediction nb_predict(const NaiveBayesModel& model, const FeatureVector& x) {
  const auto& classes = model.classes();
  std::array<std::string, kFeatureCount> values;
  for (Feature f : kAllFeatures) values[static_cast<std::size_t>(f)] = feature_value(x, f);

  std::vector<double> score(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    double s = model.log_prior()[c];
    for (Feature f : kAllFeatures) s += model.log_conditional(f, c, values[static_cast<std::size_t>(f)]);
    score[c] = s;
  }
  // classes are in id order, so the first maximum is the lowest id.
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes.size(); ++c) {
    if (score[c] > score[best]) best = c;
  }
  const double top = score[best];
  double z = 0.0;
  for (double s : score) z += std::exp(s - top);

  NbPrediction out;
  out.category = classes[best];
  out.posterior.reserve(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) out.posterior.emplace_back(classes[c], std::exp(score[c] - top) / z);
  return out;
}

nlohmann::ordered_json NaiveBayesModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = kFormat;
  j["alpha"] = alpha_;
  j["classes"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    j["classes"].push_back({{"type", category_name(classes_[c])},
                            {"type_id", category_id(classes_[c])},
                            {"log_prior", log_prior_[c]}});
  }
  j["features"] = nlohmann::ordered_json::object();
  for (Feature f : kAllFeatures) {
    const auto& t = tables_[static_cast<std::size_t>(f)];
    nlohmann::ordered_json jt;
    jt["vocab"] = t.vocab;
    jt["log_prob"] = nlohmann::ordered_json::object();
    jt["unseen_log_prob"] = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const std::string name(category_name(classes_[c]));
      jt["log_prob"][name] = t.log_prob[c];
      jt["unseen_log_prob"][name] = t.unseen_log_prob[c];
    }
    j["features"][std::string(feature_name(f))] = std::move(jt);
  }
  return j;
}

NaiveBayesModel NaiveBayesModel::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat) {
      throw Error(ErrorCode::ModelFormat, "expected format " + std::string(kFormat));
    }
    NaiveBayesModel m;
    m.alpha_ = j.at("alpha").get<double>();
    for (const auto& c : j.at("classes")) {
      auto cat = category_from_id(c.at("type_id").get<int>());
      if (!cat) throw Error(ErrorCode::ModelFormat, "bad type_id");
      if (!m.classes_.empty() && category_id(*cat) <= category_id(m.classes_.back())) {
        throw Error(ErrorCode::ModelFormat, "classes must be in ascending type id order");
      }
      m.classes_.push_back(*cat);
      m.log_prior_.push_back(c.at("log_prior").get<double>());
    }
    if (m.classes_.empty()) throw Error(ErrorCode::ModelFormat, "model has no classes");
    for (Feature f : kAllFeatures) {
      const auto& jt = j.at("features").at(std::string(feature_name(f)));
      auto& t = m.tables_[static_cast<std::size_t>(f)];
      t.vocab = jt.at("vocab").get<std::vector<std::string>>();
      for (auto c : m.classes_) {
        const std::string name(category_name(c));
        t.log_prob.push_back(jt.at("log_prob").at(name).get<std::vector<double>>());
        if (t.log_prob.back().size() != t.vocab.size()) {
          throw Error(ErrorCode::ModelFormat, "log_prob length differs from vocab for " + name);
        }
        t.unseen_log_prob.push_back(jt.at("unseen_log_prob").at(name).get<double>());
      }
      build_index(t);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ModelFormat, e.what());
  }
}

}  // namespace crimepat
