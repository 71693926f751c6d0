#include "newsclf/preprocess/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string_view>

namespace newsclf::preprocess {

namespace {

bool is_detachable_punct(char c) {
  switch (c) {
    case '.':
    case ',':
    case ';':
    case ':':
    case '!':
    case '?':
    case '(':
    case ')':
    case '"':
    case '\'':
      return true;
    default:
      return false;
  }
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

void emit_word_parts(std::string_view word, std::vector<std::string>& out) {
  // Peel punctuation off both ends, then split the core at hyphens.
  std::size_t begin = 0;
  std::size_t end = word.size();
  std::vector<std::string> leading;
  std::vector<std::string> trailing;
  while (begin < end && is_detachable_punct(word[begin])) leading.emplace_back(1, word[begin++]);
  while (end > begin && is_detachable_punct(word[end - 1])) trailing.emplace_back(1, word[--end]);

  for (auto& p : leading) out.push_back(std::move(p));
  std::string_view core = word.substr(begin, end - begin);
  std::size_t start = 0;
  while (start <= core.size()) {
    std::size_t hyphen = core.find('-', start);
    std::string_view part =
        core.substr(start, (hyphen == std::string_view::npos ? core.size() : hyphen) - start);
    if (!part.empty()) out.emplace_back(part);
    if (hyphen == std::string_view::npos) break;
    start = hyphen + 1;
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(std::move(*it));
}

constexpr std::array<std::string_view, 17> kAbbreviations = {
    "inc", "ltd", "co", "corp", "mr", "mrs", "ms", "dr", "jr",
    "sr",  "st",  "no", "vs",   "u.s", "u.k", "e.g", "i.e"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Word immediately before position `dot` (exclusive), scanning back to
// whitespace or string start.
std::string_view word_before(const std::string& text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  return std::string_view(text).substr(begin, dot - begin);
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) emit_word_parts(std::string_view(text).substr(start, i - start), tokens);
  }
  return tokens;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  auto push = [&](std::size_t begin, std::size_t end) {
    while (begin < end && is_space(text[begin])) ++begin;
    while (end > begin && is_space(text[end - 1])) --end;
    if (end > begin) sentences.push_back(text.substr(begin, end - begin));
  };

  std::size_t sentence_start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;

    if (c == '.') {
      // Decimal point, e.g. "40.6".
      if (i > 0 && i + 1 < text.size() && is_digit(text[i - 1]) && is_digit(text[i + 1])) continue;
      std::string_view before = word_before(text, i);
      if (before.size() == 1 && is_upper(before[0])) continue;  // initial like "B."
      std::string low = lower(before);
      if (std::find(kAbbreviations.begin(), kAbbreviations.end(), low) != kAbbreviations.end())
        continue;
    }

    // Closing quotes/parens stay with the sentence.
    std::size_t end = i + 1;
    while (end < text.size() && (text[end] == '"' || text[end] == '\'' || text[end] == ')')) ++end;

    std::size_t next = end;
    while (next < text.size() && is_space(text[next])) ++next;
    bool boundary = next == text.size() || (next > end && is_upper(text[next]));
    if (!boundary) continue;

    push(sentence_start, end);
    sentence_start = next;
    i = end - 1;
  }
  push(sentence_start, text.size());
  return sentences;
}

}  // namespace newsclf::preprocess
