#pragma once

#include <string>
#include <vector>

#include "newsclf/corpus/article.hpp"

namespace newsclf::corpus {

// Reads an article file: UTF-8 text with articles separated by one or more
// blank lines. Ids are assigned from file order as a000001, a000002, ...
// Labels stay unset.
std::vector<Article> load_articles(const std::string& path);

// load_articles plus a label sidecar of `id<TAB>label` lines with label in
// {general, fund_raising, m_and_a}. Every article must end up labeled.
//
// Throws Error with UnknownLabelName, DuplicateArticleId or DanglingLabel.
std::vector<Article> load_corpus(const std::string& path, const std::string& label_path);

// Applies parsed label lines to articles in place; exposed for tests and for
// callers that already hold the article list.
void apply_labels(std::vector<Article>& articles,
                  const std::vector<std::string>& label_lines,
                  const std::string& label_path_for_errors);

}  // namespace newsclf::corpus
