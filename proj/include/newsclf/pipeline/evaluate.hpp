#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "newsclf/corpus/article.hpp"
#include "newsclf/models/predict.hpp"
#include "newsclf/util/error.hpp"

namespace newsclf::pipeline {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const ClassMetrics&) const = default;
};

// Confusion rows are true labels, columns are predictions.
using Confusion =
    std::array<std::array<std::int64_t, corpus::kNumClasses>, corpus::kNumClasses>;

struct EvalReport {
  Confusion confusion{};
  double accuracy = 0.0;
  std::map<corpus::Label, ClassMetrics> per_class;

  bool operator==(const EvalReport&) const = default;
};

// Harmonic mean 2PR/(P+R), zero when P+R is zero.
double f1_score(double precision, double recall);

// Accuracy and per-class precision/recall/F1 from a confusion matrix, with
// the 0/0 convention mapping empty denominators to 0. Throws Error with
// EmptyDataset when the matrix is all zero.
EvalReport report_from_confusion(const Confusion& confusion);

template <class Model>
EvalReport evaluate(Model& model, const std::vector<typename Model::Example>& xs,
                    const std::vector<int>& ys) {
  if (xs.empty()) fail(ErrorCode::EmptyDataset, "nothing to evaluate");
  if (xs.size() != ys.size()) fail(ErrorCode::ConfigError, "example and label counts differ");
  Confusion confusion{};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i] < 0 || ys[i] >= corpus::kNumClasses)
      fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(ys[i]));
    const models::Prediction p = models::predict(model, xs[i]);
    ++confusion[static_cast<std::size_t>(ys[i])][static_cast<std::size_t>(p.label)];
  }
  return report_from_confusion(confusion);
}

// Accuracy table across models followed by one per-class metric table per
// model, tab-separated with padded name columns; percentages use 2 decimals,
// ratios 4.
std::string render_report(const std::vector<std::pair<std::string, EvalReport>>& reports);

// Machine-readable form with identical content; parse inverts serialize.
std::string serialize_reports(const std::vector<std::pair<std::string, EvalReport>>& reports);
std::vector<std::pair<std::string, EvalReport>> parse_reports(const std::string& text);

}  // namespace newsclf::pipeline
