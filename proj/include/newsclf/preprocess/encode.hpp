#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newsclf/corpus/article.hpp"
#include "newsclf/preprocess/lexicon.hpp"
#include "newsclf/preprocess/pos_tagger.hpp"
#include "newsclf/preprocess/token_class.hpp"
#include "newsclf/preprocess/vocab.hpp"

namespace newsclf::preprocess {

inline constexpr int kDefaultSteps = 50;
inline constexpr int kContextFlags = 3;  // cap, legit, domain suffix

// Fixed-length model input for one article. All arrays span `steps`
// positions; padded positions carry PAD ids, zero features and mask 0.
struct EncodedSequence {
  int steps = 0;
  std::vector<std::int32_t> token_ids;
  std::vector<std::int32_t> pos_ids;
  std::vector<float> context_features;  // steps x kContextFlags, row-major
  std::vector<float> mask;
  std::vector<std::string> surfaces;  // empty string at padded positions
};

// Headline tokens then synopsis tokens, classified, flagged and POS-tagged.
// The tagger runs per sentence; the sidecar overload takes tags for the
// concatenated token list instead and throws SidecarLengthMismatch when the
// count differs.
std::vector<TokenRecord> article_records(const corpus::Article& article, const Lexicon& lexicon,
                                         const PosTagger& tagger);
std::vector<TokenRecord> article_records(const corpus::Article& article, const Lexicon& lexicon,
                                         const std::vector<int>& sidecar_tags);

EncodedSequence encode_records(const std::vector<TokenRecord>& records, const Vocab& vocab,
                               int steps);

EncodedSequence encode_sequence(const corpus::Article& article, const Vocab& vocab,
                                const Lexicon& lexicon, const PosTagger& tagger,
                                int steps = kDefaultSteps);

// Character ids for the char-embedding branch: PAD=0, a..z -> 1..26,
// 0..9 -> 27..36, anything else -> 37 (OTHER); case-folded, padded or
// trimmed to max_chars.
inline constexpr std::int32_t kCharOther = 37;
inline constexpr std::int32_t kCharTableRows = 38;
std::vector<std::int32_t> char_embed_ids(const std::string& token, int max_chars);
// Canonical character for an id; '\0' for PAD, '?' for OTHER.
char char_for_id(std::int32_t id);

}  // namespace newsclf::preprocess
