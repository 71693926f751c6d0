#include "newsclf/preprocess/token_class.hpp"

#include <algorithm>
#include <cctype>

namespace newsclf::preprocess {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool ends_with_ci(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  for (std::size_t i = 0; i < suffix.size(); ++i) {
    char a = static_cast<char>(std::tolower(static_cast<unsigned char>(s[s.size() - suffix.size() + i])));
    if (a != suffix[i]) return false;
  }
  return true;
}

}  // namespace

const char* to_string(TokenClass c) {
  switch (c) {
    case TokenClass::LEGIT: return "LEGIT";
    case TokenClass::ILGTE: return "ILGTE";
    case TokenClass::NUM: return "NUM";
    case TokenClass::DOLLAR_NUM: return "DOLLAR_NUM";
  }
  return "?";
}

bool parses_as_number(const std::string& body) {
  if (body.empty()) return false;
  std::size_t i = 0;
  // Integer part: plain digit run, or comma-grouped 1-3 digits then groups of 3.
  std::size_t digits = 0;
  while (i < body.size() && is_digit(body[i])) {
    ++i;
    ++digits;
  }
  if (digits == 0) return false;
  if (i < body.size() && body[i] == ',') {
    if (digits > 3) return false;
    while (i < body.size() && body[i] == ',') {
      ++i;
      for (int k = 0; k < 3; ++k, ++i)
        if (i >= body.size() || !is_digit(body[i])) return false;
    }
  }
  if (i < body.size() && body[i] == '.') {
    ++i;
    if (i == body.size()) return false;
    while (i < body.size() && is_digit(body[i])) ++i;
  }
  return i == body.size();
}

TokenClass classify_token(const std::string& token, const Lexicon& lexicon) {
  if (token.size() > 1 && token[0] == '$' && parses_as_number(token.substr(1)))
    return TokenClass::DOLLAR_NUM;
  if (parses_as_number(token)) return TokenClass::NUM;
  if (lexicon.contains(lower(token))) return TokenClass::LEGIT;
  return TokenClass::ILGTE;
}

ContextFlags word_context(const std::string& token, const Lexicon& lexicon) {
  ContextFlags flags;
  if (!token.empty() && token[0] >= 'A' && token[0] <= 'Z') flags.cap_flag = 1;
  if (lexicon.contains(lower(token))) flags.legit_flag = 1;
  if (ends_with_ci(token, ".com") || ends_with_ci(token, ".ai")) flags.domain_suffix_flag = 1;
  return flags;
}

TokenRecord make_token_record(const std::string& token, const Lexicon& lexicon) {
  TokenRecord rec;
  rec.surface = token;
  rec.token_class = classify_token(token, lexicon);
  ContextFlags flags = word_context(token, lexicon);
  rec.cap_flag = flags.cap_flag;
  rec.legit_flag = rec.token_class == TokenClass::LEGIT ? 1 : 0;
  rec.domain_suffix_flag = flags.domain_suffix_flag;
  return rec;
}

}  // namespace newsclf::preprocess
