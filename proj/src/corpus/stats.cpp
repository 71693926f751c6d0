#include "newsclf/corpus/stats.hpp"

#include "newsclf/preprocess/text.hpp"
#include "newsclf/preprocess/token_class.hpp"

namespace newsclf::corpus {

CorpusStats corpus_stats(const std::vector<Article>& articles,
                         const preprocess::Lexicon& lexicon) {
  CorpusStats stats;
  for (const Article& article : articles) {
    ++stats.articles;
    stats.sentences += 1 + static_cast<std::int64_t>(article.synopsis_sentences.size());
    if (article.label) ++stats.label_counts[static_cast<std::size_t>(*article.label)];
    auto count_text = [&](const std::string& text) {
      for (const std::string& token : preprocess::tokenize(text)) {
        ++stats.words;
        if (preprocess::classify_token(token, lexicon) == preprocess::TokenClass::ILGTE)
          ++stats.illegitimate_words;
      }
    };
    count_text(article.headline);
    for (const std::string& sentence : article.synopsis_sentences) count_text(sentence);
  }
  return stats;
}

}  // namespace newsclf::corpus
