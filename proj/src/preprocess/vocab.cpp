#include "newsclf/preprocess/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "newsclf/preprocess/text.hpp"
#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"

namespace newsclf::preprocess {

namespace {

const char* kReservedNames[Vocab::kReserved] = {"<PAD>", "<UNK>", "<ILGTE>", "<NUM>",
                                                "<DOLLAR_NUM>"};

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Vocab::Vocab(std::vector<std::string> words) : words_(std::move(words)) {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!ids_.emplace(words_[i], kReserved + static_cast<std::int32_t>(i)).second)
      throw Error(ErrorCode::VocabMismatch, "duplicate vocab word " + words_[i]);
  }
}

std::int32_t Vocab::id_for(const std::string& surface, TokenClass token_class) const {
  switch (token_class) {
    case TokenClass::ILGTE: return kIlgte;
    case TokenClass::NUM: return kNum;
    case TokenClass::DOLLAR_NUM: return kDollarNum;
    case TokenClass::LEGIT: break;
  }
  auto it = ids_.find(lower(surface));
  return it == ids_.end() ? kUnk : it->second;
}

std::optional<std::int32_t> Vocab::id_of_word(const std::string& lowercase_word) const {
  auto it = ids_.find(lowercase_word);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void Vocab::save(const std::string& path) const {
  std::string out;
  for (const char* name : kReservedNames) {
    out += name;
    out.push_back('\n');
  }
  for (const std::string& word : words_) {
    out += word;
    out.push_back('\n');
  }
  write_file_atomic(path, out);
}

Vocab Vocab::load(const std::string& path) {
  std::vector<std::string> lines = read_lines(path);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < kReserved)
    throw Error(ErrorCode::VocabMismatch, path + ": missing reserved rows");
  for (std::int32_t i = 0; i < kReserved; ++i) {
    if (lines[static_cast<std::size_t>(i)] != kReservedNames[i])
      throw Error(ErrorCode::VocabMismatch,
                  path + ": row " + std::to_string(i) + " is not " + kReservedNames[i]);
  }
  return Vocab(std::vector<std::string>(lines.begin() + kReserved, lines.end()));
}

std::uint64_t Vocab::content_hash() const {
  std::string joined;
  for (const std::string& word : words_) {
    joined += word;
    joined.push_back('\n');
  }
  return fnv1a64(joined);
}

Vocab build_vocab(const std::vector<corpus::Article>& train_articles, const Lexicon& lexicon,
                  int min_freq) {
  if (min_freq < 1) throw Error(ErrorCode::ConfigError, "min_freq must be >= 1");
  if (train_articles.empty()) throw Error(ErrorCode::EmptyCorpus, "no training articles");

  std::map<std::string, int> freq;
  auto count_text = [&](const std::string& text) {
    for (const std::string& token : tokenize(text)) {
      if (classify_token(token, lexicon) == TokenClass::LEGIT) ++freq[lower(token)];
    }
  };
  for (const corpus::Article& article : train_articles) {
    count_text(article.headline);
    for (const std::string& sentence : article.synopsis_sentences) count_text(sentence);
  }

  std::vector<std::string> retained;
  for (const auto& [word, count] : freq) {
    if (count >= min_freq) retained.push_back(word);
  }
  return Vocab(std::move(retained));
}

}  // namespace newsclf::preprocess
