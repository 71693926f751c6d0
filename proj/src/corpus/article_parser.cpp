#include "newsclf/corpus/article_parser.hpp"

#include <cctype>
#include <string>

#include "newsclf/preprocess/text.hpp"
#include "newsclf/util/error.hpp"

namespace newsclf::corpus {

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string collapse_whitespace(const std::string& s) {
  std::string out;
  bool in_space = true;  // leading whitespace is dropped
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out.push_back(' ');
      out.push_back(c);
      in_space = false;
    }
  }
  return out;
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++count;
  return count;
}

// Returns the collapsed text between <tag>…</tag>, matching tag names
// case-insensitively against the already-lowercased copy of the input.
std::string extract_block(const std::string& raw, const std::string& raw_lower,
                          const std::string& tag) {
  const std::string open = "<" + tag + ">";
  const std::string close = "</" + tag + ">";
  const std::size_t opens = count_occurrences(raw_lower, open);
  const std::size_t closes = count_occurrences(raw_lower, close);
  if (opens == 0 && closes == 0)
    throw Error(ErrorCode::MissingTag, "no <" + tag + "> block");
  if (opens != 1 || closes != 1)
    throw Error(ErrorCode::MalformedTag,
                "expected exactly one <" + tag + "> open/close pair");
  const std::size_t open_pos = raw_lower.find(open);
  const std::size_t close_pos = raw_lower.find(close);
  if (close_pos < open_pos)
    throw Error(ErrorCode::MalformedTag, "</" + tag + "> precedes <" + tag + ">");
  const std::size_t begin = open_pos + open.size();
  return collapse_whitespace(raw.substr(begin, close_pos - begin));
}

}  // namespace

Article parse_article(const std::string& raw_text) {
  const std::string raw_lower = lower(raw_text);
  const std::string headline = extract_block(raw_text, raw_lower, "headline");
  const std::string synopsis = extract_block(raw_text, raw_lower, "synopsis");
  if (headline.empty()) throw Error(ErrorCode::EmptyContent, "headline empty after trim");
  if (synopsis.empty()) throw Error(ErrorCode::EmptyContent, "synopsis empty after trim");

  Article article;
  article.headline = headline;
  article.synopsis_sentences = preprocess::split_sentences(synopsis);
  if (article.synopsis_sentences.size() > 3) article.synopsis_sentences.resize(3);
  return article;
}

std::string serialize_article(const Article& article) {
  std::string out = "<headline>" + article.headline + "</headline>\n<Synopsis>";
  for (std::size_t i = 0; i < article.synopsis_sentences.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += article.synopsis_sentences[i];
  }
  out += "</Synopsis>\n";
  return out;
}

}  // namespace newsclf::corpus
