#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "newsclf/corpus/article.hpp"
#include "newsclf/preprocess/lexicon.hpp"

namespace newsclf::corpus {

struct CorpusStats {
  std::int64_t articles = 0;
  std::int64_t sentences = 0;
  std::int64_t words = 0;
  std::int64_t illegitimate_words = 0;
  std::array<std::int64_t, kNumClasses> label_counts{};
};

// Counts articles, sentences (headline plus synopsis sentences), tokens and
// ILGTE tokens. Unlabeled articles contribute to every count except
// label_counts.
CorpusStats corpus_stats(const std::vector<Article>& articles,
                         const preprocess::Lexicon& lexicon);

}  // namespace newsclf::corpus
