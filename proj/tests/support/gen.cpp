#include "support/gen.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "newsclf/corpus/article_parser.hpp"
#include "newsclf/util/io.hpp"
#include "newsclf/util/rng.hpp"

namespace testsupport {

using newsclf::Rng;
using newsclf::corpus::Article;
using newsclf::corpus::EmbeddingMatrix;
using newsclf::corpus::Label;

TempDir::TempDir() {
  static int counter = 0;
  const auto base = std::filesystem::temp_directory_path();
  path_ = base / ("newsclf_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

CmdResult run_cmd(const std::string& command) {
  CmdResult result;
  FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + command);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = {
      "market",   "shares",    "quarter", "revenue", "growth",   "report",  "analysts",
      "company",  "announced", "today",   "results", "strong",   "demand",  "sector",
      "earnings", "margin",    "outlook", "guidance", "investors", "capital", "board",
      "product",  "clinical",  "trial",   "data",    "platform", "services", "customers",
      "expanded", "operations", "global", "regional", "officials", "statement", "release",
      "morning",  "higher",    "lower",   "steady",  "volume",   "trading",  "session",
      "update",   "review",    "filing",  "records", "annual",   "period",   "segment",
      "teams",    "plans",     "effort",  "focus",   "several",  "across",   "during"};
  return words;
}

const std::vector<std::string>& company_names() {
  static const std::vector<std::string> names = {
      "Zorvex",  "Quilbra", "Mintovo", "Braxell", "Corvant", "Nexilor", "Tavrik",  "Ulmaren",
      "Vostra",  "Weldrin", "Yantrix", "Peltova", "Drenzar", "Fornique", "Glavek", "Hestra"};
  return names;
}

newsclf::preprocess::Lexicon make_lexicon() {
  return newsclf::preprocess::Lexicon(filler_words());
}

std::vector<std::string> lexicon_lines() { return filler_words(); }

namespace {

std::string capitalized(std::string word) {
  word[0] = static_cast<char>(::toupper(static_cast<unsigned char>(word[0])));
  return word;
}

std::string filler_sentence(Rng& rng, int length) {
  const auto& pool = filler_words();
  std::string out = capitalized(pool[rng.below(pool.size())]);
  for (int i = 1; i < length; ++i) out += " " + pool[rng.below(pool.size())];
  return out + ".";
}

// Inserts extras after random non-initial word positions of a filler
// sentence, keeping the trailing period on the last word.
std::string sentence_with(Rng& rng, int length, const std::vector<std::string>& extras) {
  const auto& pool = filler_words();
  std::vector<std::string> words;
  words.push_back(capitalized(pool[rng.below(pool.size())]));
  for (int i = 1; i < length; ++i) words.push_back(pool[rng.below(pool.size())]);
  for (const auto& extra : extras) {
    const std::size_t at = 1 + rng.below(words.size() - 1);
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), extra);
  }
  std::string out = words[0];
  for (std::size_t i = 1; i < words.size(); ++i) out += " " + words[i];
  return out + ".";
}

std::string dollar_amount(Rng& rng) {
  return "$" + std::to_string(1 + rng.below(98)) + "." + std::to_string(rng.below(10));
}

Article directional_article(Rng& rng, Label label) {
  Article a;
  a.label = label;
  a.headline = filler_sentence(rng, 3 + static_cast<int>(rng.below(3)));
  a.headline.pop_back();  // headlines carry no final period

  std::vector<std::string> signal;
  if (label == Label::FundRaising) {
    signal = {company_names()[rng.below(company_names().size())], dollar_amount(rng)};
  } else if (label == Label::MergerAcquisition) {
    const std::size_t first = rng.below(company_names().size());
    std::size_t second = rng.below(company_names().size() - 1);
    if (second >= first) ++second;
    signal = {company_names()[first], company_names()[second]};
  }

  const int sentences = 1 + static_cast<int>(rng.below(2));
  const int with_signal = sentences == 1 ? 0 : static_cast<int>(rng.below(2));
  for (int s = 0; s < sentences; ++s) {
    const int length = 5 + static_cast<int>(rng.below(5));
    if (s == with_signal)
      a.synopsis_sentences.push_back(sentence_with(rng, length, signal));
    else
      a.synopsis_sentences.push_back(filler_sentence(rng, length));
  }
  return a;
}

}  // namespace

std::vector<Article> make_labeled_corpus(const std::array<std::int64_t, 3>& per_class,
                                         std::uint64_t seed) {
  std::vector<Label> labels;
  for (int c = 0; c < 3; ++c)
    labels.insert(labels.end(), static_cast<std::size_t>(per_class[static_cast<std::size_t>(c)]),
                  static_cast<Label>(c));
  Rng rng(Rng::derive(seed, 0));
  rng.shuffle(labels);

  std::vector<Article> articles;
  articles.reserve(labels.size());
  for (Label label : labels) {
    Article a;
    a.label = label;
    a.headline = filler_sentence(rng, 3);
    a.headline.pop_back();
    const int sentences = 1 + static_cast<int>(rng.below(3));
    for (int s = 0; s < sentences; ++s)
      a.synopsis_sentences.push_back(filler_sentence(rng, 4 + static_cast<int>(rng.below(4))));
    articles.push_back(std::move(a));
  }
  return articles;
}

std::vector<Article> make_directional_corpus(int count, std::uint64_t seed) {
  if (count % 3 != 0) throw std::runtime_error("count must be divisible by 3");
  std::vector<Label> labels;
  for (int c = 0; c < 3; ++c)
    labels.insert(labels.end(), static_cast<std::size_t>(count / 3), static_cast<Label>(c));
  Rng rng(Rng::derive(seed, 1));
  rng.shuffle(labels);

  std::vector<Article> articles;
  articles.reserve(labels.size());
  for (Label label : labels) articles.push_back(directional_article(rng, label));
  return articles;
}

CorpusFiles write_corpus_files(const std::filesystem::path& dir,
                               const std::vector<Article>& articles) {
  std::filesystem::create_directories(dir);
  std::string corpus_text;
  std::string label_text;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    if (i > 0) corpus_text += "\n";
    corpus_text += newsclf::corpus::serialize_article(articles[i]);
    if (articles[i].label) {
      char id[16];
      std::snprintf(id, sizeof id, "a%06zu", i + 1);
      label_text += std::string(id) + "\t" + newsclf::corpus::label_name(*articles[i].label) + "\n";
    }
  }
  std::string lexicon_text;
  for (const auto& word : lexicon_lines()) lexicon_text += word + "\n";

  CorpusFiles files{dir / "corpus.txt", dir / "labels.tsv", dir / "lexicon.txt"};
  newsclf::write_file_atomic(files.corpus, corpus_text);
  newsclf::write_file_atomic(files.labels, label_text);
  newsclf::write_file_atomic(files.lexicon, lexicon_text);
  return files;
}

EmbeddingMatrix random_embeddings(const std::vector<std::string>& ids, int steps, int dim,
                                  std::uint64_t seed) {
  EmbeddingMatrix m;
  m.row_count = static_cast<std::uint32_t>(ids.size());
  m.steps = static_cast<std::uint32_t>(steps);
  m.dim = static_cast<std::uint32_t>(dim);
  m.article_ids = ids;
  m.data.resize(ids.size() * static_cast<std::size_t>(steps) * static_cast<std::size_t>(dim));
  for (std::size_t r = 0; r < ids.size(); ++r) {
    Rng rng(Rng::derive(seed, r));
    for (std::size_t k = 0; k < static_cast<std::size_t>(steps) * static_cast<std::size_t>(dim);
         ++k)
      m.data[r * static_cast<std::size_t>(steps) * static_cast<std::size_t>(dim) + k] =
          rng.uniform(-1.0f, 1.0f);
  }
  m.rebuild_index();
  return m;
}

}  // namespace testsupport
