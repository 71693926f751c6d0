#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace newsclf::corpus {

// Class indices are stable: 0=General, 1=FundRaising, 2=MergerAcquisition.
enum class Label : int {
  GeneralNews = 0,
  FundRaising = 1,
  MergerAcquisition = 2,
};

inline constexpr int kNumClasses = 3;
inline constexpr std::array<Label, kNumClasses> kAllLabels = {
    Label::GeneralNews, Label::FundRaising, Label::MergerAcquisition};

// Names as they appear in label files.
const char* label_name(Label label);
std::optional<Label> label_from_name(const std::string& name);

// One news item: headline plus up to three synopsis sentences.
struct Article {
  std::string id;
  std::string headline;
  std::vector<std::string> synopsis_sentences;  // 1..3 entries
  std::optional<Label> label;                   // absent for prediction-time articles

  bool operator==(const Article&) const = default;
};

}  // namespace newsclf::corpus
