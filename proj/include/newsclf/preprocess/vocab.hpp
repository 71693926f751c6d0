#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "newsclf/corpus/article.hpp"
#include "newsclf/preprocess/lexicon.hpp"
#include "newsclf/preprocess/token_class.hpp"

namespace newsclf::preprocess {

// Token id table. Ids 0..4 are reserved; retained words get dense ids from 5
// in lexicographic order, so a vocab is reproducible from its word list.
class Vocab {
 public:
  static constexpr std::int32_t kPad = 0;
  static constexpr std::int32_t kUnk = 1;
  static constexpr std::int32_t kIlgte = 2;
  static constexpr std::int32_t kNum = 3;
  static constexpr std::int32_t kDollarNum = 4;
  static constexpr std::int32_t kReserved = 5;

  Vocab() = default;
  explicit Vocab(std::vector<std::string> words);

  std::int32_t size() const { return kReserved + static_cast<std::int32_t>(words_.size()); }
  const std::vector<std::string>& words() const { return words_; }

  // Id for a classified token: LEGIT surfaces map through the word table
  // (missing -> UNK), the other classes map to their shared reserved id.
  std::int32_t id_for(const std::string& surface, TokenClass token_class) const;
  std::optional<std::int32_t> id_of_word(const std::string& lowercase_word) const;

  void save(const std::string& path) const;
  static Vocab load(const std::string& path);
  std::uint64_t content_hash() const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::int32_t> ids_;
};

// Counts LEGIT tokens over headline + synopsis of the training articles and
// retains lowercase surfaces with frequency >= min_freq.
//
// Throws Error with EmptyCorpus (no articles) or ConfigError (min_freq < 1).
Vocab build_vocab(const std::vector<corpus::Article>& train_articles, const Lexicon& lexicon,
                  int min_freq = 2);

}  // namespace newsclf::preprocess
