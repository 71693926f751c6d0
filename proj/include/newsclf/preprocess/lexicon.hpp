#pragma once

#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

namespace newsclf::preprocess {

// Legitimate-English vocabulary. Stored lowercase; queries are folded, so
// membership is case-insensitive.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::vector<std::string>& words);

  // One word per line, UTF-8.
  static Lexicon load(const std::filesystem::path& path);

  bool contains(const std::string& word) const;
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace newsclf::preprocess
