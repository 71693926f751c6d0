#include "newsclf/pipeline/evaluate.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace newsclf::pipeline {

namespace {

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", fraction * 100.0);
  return buf;
}

std::string ratio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string padded(const std::string& text, std::size_t width) {
  std::string out = text;
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

}  // namespace

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  if (denom == 0.0) return 0.0;
  return 2.0 * precision * recall / denom;
}

EvalReport report_from_confusion(const Confusion& confusion) {
  std::int64_t total = 0;
  std::int64_t diagonal = 0;
  for (int r = 0; r < corpus::kNumClasses; ++r)
    for (int c = 0; c < corpus::kNumClasses; ++c) {
      total += confusion[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (r == c) diagonal += confusion[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  if (total == 0) fail(ErrorCode::EmptyDataset, "confusion matrix is empty");

  EvalReport report;
  report.confusion = confusion;
  report.accuracy = static_cast<double>(diagonal) / static_cast<double>(total);
  for (corpus::Label label : corpus::kAllLabels) {
    const std::size_t k = static_cast<std::size_t>(label);
    std::int64_t row = 0, col = 0;
    for (std::size_t j = 0; j < corpus::kNumClasses; ++j) {
      row += confusion[k][j];
      col += confusion[j][k];
    }
    const std::int64_t tp = confusion[k][k];
    ClassMetrics m;
    m.precision = col == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(col);
    m.recall = row == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(row);
    m.f1 = f1_score(m.precision, m.recall);
    report.per_class[label] = m;
  }
  return report;
}

std::string render_report(const std::vector<std::pair<std::string, EvalReport>>& reports) {
  std::size_t width = std::string("Model").size();
  for (const auto& [name, report] : reports) width = std::max(width, name.size());

  std::ostringstream out;
  out << padded("Model", width) << "\tAccuracy\n";
  for (const auto& [name, report] : reports)
    out << padded(name, width) << '\t' << percent(report.accuracy) << '\n';

  for (const auto& [name, report] : reports) {
    out << '\n' << name << '\n';
    out << padded("Class", 12) << "\tPrecision\tRecall\tF1\n";
    for (const auto& [label, m] : report.per_class)
      out << padded(corpus::label_name(label), 12) << '\t' << ratio(m.precision) << '\t'
          << ratio(m.recall) << '\t' << ratio(m.f1) << '\n';
  }
  return out.str();
}

std::string serialize_reports(const std::vector<std::pair<std::string, EvalReport>>& reports) {
  nlohmann::json root;
  root["reports"] = nlohmann::json::array();
  for (const auto& [name, report] : reports) {
    nlohmann::json entry;
    entry["model"] = name;
    entry["accuracy"] = report.accuracy;
    entry["confusion"] = report.confusion;
    nlohmann::json classes = nlohmann::json::object();
    for (const auto& [label, m] : report.per_class)
      classes[corpus::label_name(label)] = {
          {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
    entry["per_class"] = classes;
    root["reports"].push_back(entry);
  }
  return root.dump(2) + "\n";
}

std::vector<std::pair<std::string, EvalReport>> parse_reports(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IoError, std::string("bad metrics document: ") + e.what());
  }
  std::vector<std::pair<std::string, EvalReport>> reports;
  try {
    for (const nlohmann::json& entry : root.at("reports")) {
      EvalReport report;
      report.accuracy = entry.at("accuracy").get<double>();
      report.confusion = entry.at("confusion").get<Confusion>();
      for (const auto& [key, value] : entry.at("per_class").items()) {
        const auto label = corpus::label_from_name(key);
        if (!label) fail(ErrorCode::UnknownLabelName, key);
        ClassMetrics m;
        m.precision = value.at("precision").get<double>();
        m.recall = value.at("recall").get<double>();
        m.f1 = value.at("f1").get<double>();
        report.per_class[*label] = m;
      }
      reports.emplace_back(entry.at("model").get<std::string>(), report);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IoError, std::string("bad metrics document: ") + e.what());
  }
  return reports;
}

}  // namespace newsclf::pipeline
