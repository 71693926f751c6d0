#pragma once

#include <string>
#include <vector>

namespace newsclf::preprocess {

// Splits on whitespace, detaches the punctuation .,;:!?()"' found at either
// end of a token, and breaks hyphenated words at every hyphen (the hyphen is
// dropped). "$" is not punctuation, so dollar amounts like "$40.6" stay one
// token. Never produces empty tokens.
std::vector<std::string> tokenize(const std::string& text);

// Sentence boundaries are . ! ? followed by (optional closing quote/paren,
// then) whitespace and a capital letter, or end of text. A '.' between two
// digits never splits, and a short fixed abbreviation list (Inc., Ltd.,
// U.S., ...) is honored.
std::vector<std::string> split_sentences(const std::string& text);

}  // namespace newsclf::preprocess
