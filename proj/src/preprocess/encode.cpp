#include "newsclf/preprocess/encode.hpp"

#include <cctype>

#include "newsclf/preprocess/text.hpp"
#include "newsclf/util/error.hpp"

namespace newsclf::preprocess {

namespace {

std::vector<std::vector<std::string>> article_sentences_tokens(const corpus::Article& article) {
  std::vector<std::vector<std::string>> sentences;
  sentences.push_back(tokenize(article.headline));
  for (const std::string& sentence : article.synopsis_sentences)
    sentences.push_back(tokenize(sentence));
  return sentences;
}

}  // namespace

std::vector<TokenRecord> article_records(const corpus::Article& article, const Lexicon& lexicon,
                                         const PosTagger& tagger) {
  std::vector<TokenRecord> records;
  for (const std::vector<std::string>& tokens : article_sentences_tokens(article)) {
    const std::vector<int> tags = tagger.tag(tokens);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      TokenRecord record = make_token_record(tokens[i], lexicon);
      record.pos_tag = tags[i];
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::vector<TokenRecord> article_records(const corpus::Article& article, const Lexicon& lexicon,
                                         const std::vector<int>& sidecar_tags) {
  std::vector<TokenRecord> records;
  for (const std::vector<std::string>& tokens : article_sentences_tokens(article)) {
    for (const std::string& token : tokens)
      records.push_back(make_token_record(token, lexicon));
  }
  if (sidecar_tags.size() != records.size())
    throw Error(ErrorCode::SidecarLengthMismatch,
                "article " + article.id + ": " + std::to_string(sidecar_tags.size()) +
                    " sidecar tags for " + std::to_string(records.size()) + " tokens");
  for (std::size_t i = 0; i < records.size(); ++i) records[i].pos_tag = sidecar_tags[i];
  return records;
}

EncodedSequence encode_records(const std::vector<TokenRecord>& records, const Vocab& vocab,
                               int steps) {
  if (steps <= 0) throw Error(ErrorCode::ConfigError, "steps must be positive");
  EncodedSequence seq;
  seq.steps = steps;
  const std::size_t t = static_cast<std::size_t>(steps);
  seq.token_ids.assign(t, Vocab::kPad);
  seq.pos_ids.assign(t, 0);
  seq.context_features.assign(t * kContextFlags, 0.0f);
  seq.mask.assign(t, 0.0f);
  seq.surfaces.assign(t, std::string());

  const std::size_t used = std::min(records.size(), t);
  for (std::size_t i = 0; i < used; ++i) {
    const TokenRecord& record = records[i];
    seq.token_ids[i] = vocab.id_for(record.surface, record.token_class);
    seq.pos_ids[i] = record.pos_tag;
    seq.context_features[i * kContextFlags + 0] = static_cast<float>(record.cap_flag);
    seq.context_features[i * kContextFlags + 1] = static_cast<float>(record.legit_flag);
    seq.context_features[i * kContextFlags + 2] = static_cast<float>(record.domain_suffix_flag);
    seq.mask[i] = 1.0f;
    seq.surfaces[i] = record.surface;
  }
  return seq;
}

EncodedSequence encode_sequence(const corpus::Article& article, const Vocab& vocab,
                                const Lexicon& lexicon, const PosTagger& tagger, int steps) {
  return encode_records(article_records(article, lexicon, tagger), vocab, steps);
}

std::vector<std::int32_t> char_embed_ids(const std::string& token, int max_chars) {
  std::vector<std::int32_t> ids(static_cast<std::size_t>(max_chars), 0);
  const std::size_t used = std::min(token.size(), static_cast<std::size_t>(max_chars));
  for (std::size_t i = 0; i < used; ++i) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(token[i])));
    if (c >= 'a' && c <= 'z')
      ids[i] = 1 + (c - 'a');
    else if (c >= '0' && c <= '9')
      ids[i] = 27 + (c - '0');
    else
      ids[i] = kCharOther;
  }
  return ids;
}

char char_for_id(std::int32_t id) {
  if (id >= 1 && id <= 26) return static_cast<char>('a' + (id - 1));
  if (id >= 27 && id <= 36) return static_cast<char>('0' + (id - 27));
  if (id == kCharOther) return '?';
  return '\0';
}

}  // namespace newsclf::preprocess
