#pragma once

#include <string>

#include "newsclf/corpus/article.hpp"

namespace newsclf::corpus {

// Extracts the <headline> and <Synopsis> blocks from one article's raw text.
// Tag-name matching is case-insensitive and content may span lines; internal
// line breaks are collapsed to single spaces. The synopsis is sentence-split
// and truncated to 3 sentences. The returned Article carries no id or label.
//
// Throws Error with MissingTag, EmptyContent or MalformedTag.
Article parse_article(const std::string& raw_text);

// Inverse of parse_article for well-formed articles (modulo whitespace
// normalization): parse_article(serialize_article(a)) preserves headline and
// sentences as long as each sentence re-splits on its own.
std::string serialize_article(const Article& article);

}  // namespace newsclf::corpus
