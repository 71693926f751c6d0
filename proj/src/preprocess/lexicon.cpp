#include "newsclf/preprocess/lexicon.hpp"

#include <algorithm>
#include <cctype>

#include "newsclf/util/io.hpp"

namespace newsclf::preprocess {

namespace {

std::string fold(const std::string& word) {
  std::string out = word;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Lexicon::Lexicon(const std::vector<std::string>& words) {
  for (const auto& w : words)
    if (!w.empty()) words_.insert(fold(w));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  return Lexicon(read_lines(path));
}

bool Lexicon::contains(const std::string& word) const {
  return words_.count(fold(word)) > 0;
}

}  // namespace newsclf::preprocess
