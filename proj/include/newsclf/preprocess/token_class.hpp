#pragma once

#include <cstdint>
#include <string>

#include "newsclf/preprocess/lexicon.hpp"

namespace newsclf::preprocess {

enum class TokenClass : std::uint8_t {
  LEGIT = 0,       // lexicon word
  ILGTE = 1,       // not a legitimate English word (names, tickers, jargon)
  NUM = 2,         // bare number, dates and quantifiers included
  DOLLAR_NUM = 3,  // dollar-sign amount like $40.6
};

const char* to_string(TokenClass c);

// Exactly one class per token. DOLLAR_NUM wins over NUM, numbers win over the
// lexicon, everything else is LEGIT or ILGTE by lexicon membership of the
// lowercase form.
TokenClass classify_token(const std::string& token, const Lexicon& lexicon);

struct ContextFlags {
  std::uint8_t cap_flag = 0;            // starts with an uppercase letter
  std::uint8_t legit_flag = 0;          // lowercase form is in the lexicon
  std::uint8_t domain_suffix_flag = 0;  // ends with ".com" or ".ai"

  bool operator==(const ContextFlags&) const = default;
};

ContextFlags word_context(const std::string& token, const Lexicon& lexicon);

// One token with its class and side features.
struct TokenRecord {
  std::string surface;
  TokenClass token_class = TokenClass::ILGTE;
  std::uint8_t cap_flag = 0;
  std::uint8_t legit_flag = 0;
  int pos_tag = 0;  // Penn tagset index, 0 = PAD/untagged
  std::uint8_t domain_suffix_flag = 0;
};

TokenRecord make_token_record(const std::string& token, const Lexicon& lexicon);

// True if the token body (after an optional leading '$') is a number:
// digits with optional comma thousand-groups and one optional decimal part.
bool parses_as_number(const std::string& body);

}  // namespace newsclf::preprocess
