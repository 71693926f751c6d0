#include "newsclf/corpus/corpus_io.hpp"

#include <cctype>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "newsclf/corpus/article_parser.hpp"
#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"

namespace newsclf::corpus {

namespace {

bool is_blank(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string make_id(std::size_t ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "a%06zu", ordinal);
  return buf;
}

}  // namespace

std::vector<Article> load_articles(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<Article> articles;
  std::string chunk;
  auto flush = [&] {
    if (chunk.empty()) return;
    Article article = parse_article(chunk);
    article.id = make_id(articles.size() + 1);
    articles.push_back(std::move(article));
    chunk.clear();
  };
  for (const std::string& line : lines) {
    if (is_blank(line)) {
      flush();
    } else {
      chunk += line;
      chunk.push_back('\n');
    }
  }
  flush();
  return articles;
}

void apply_labels(std::vector<Article>& articles,
                  const std::vector<std::string>& label_lines,
                  const std::string& label_path_for_errors) {
  std::unordered_map<std::string, Article*> by_id;
  for (Article& article : articles) {
    if (!by_id.emplace(article.id, &article).second)
      throw Error(ErrorCode::DuplicateArticleId, "article id " + article.id);
    article.label.reset();
  }
  std::unordered_set<std::string> labeled;
  for (std::size_t i = 0; i < label_lines.size(); ++i) {
    const std::string& line = label_lines[i];
    if (is_blank(line)) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::IoError, label_path_for_errors + " line " +
                                          std::to_string(i + 1) + ": expected id<TAB>label");
    const std::string id = line.substr(0, tab);
    const std::string name = line.substr(tab + 1);
    const auto label = label_from_name(name);
    if (!label)
      throw Error(ErrorCode::UnknownLabelName,
                  "\"" + name + "\" at " + label_path_for_errors + " line " +
                      std::to_string(i + 1));
    if (!labeled.insert(id).second)
      throw Error(ErrorCode::DuplicateArticleId, "label file repeats id " + id);
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw Error(ErrorCode::DanglingLabel, "label for unknown article id " + id);
    it->second->label = *label;
  }
  for (const Article& article : articles)
    if (!article.label)
      throw Error(ErrorCode::IoError, "no label for article " + article.id);
}

std::vector<Article> load_corpus(const std::string& path, const std::string& label_path) {
  std::vector<Article> articles = load_articles(path);
  apply_labels(articles, read_lines(label_path), label_path);
  return articles;
}

}  // namespace newsclf::corpus
