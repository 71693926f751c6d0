#include "newsclf/corpus/article.hpp"

namespace newsclf::corpus {

const char* label_name(Label label) {
  switch (label) {
    case Label::GeneralNews: return "general";
    case Label::FundRaising: return "fund_raising";
    case Label::MergerAcquisition: return "m_and_a";
  }
  return "?";
}

std::optional<Label> label_from_name(const std::string& name) {
  if (name == "general") return Label::GeneralNews;
  if (name == "fund_raising") return Label::FundRaising;
  if (name == "m_and_a") return Label::MergerAcquisition;
  return std::nullopt;
}

}  // namespace newsclf::corpus
