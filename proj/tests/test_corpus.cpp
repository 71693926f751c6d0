#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstring>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "newsclf/corpus/article_parser.hpp"
#include "newsclf/corpus/corpus_io.hpp"
#include "newsclf/corpus/embedding_file.hpp"
#include "newsclf/corpus/split.hpp"
#include "newsclf/corpus/stats.hpp"
#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"
#include "support/gen.hpp"

using namespace newsclf;
using namespace newsclf::corpus;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("label names round-trip") {
  CHECK(std::string(label_name(Label::GeneralNews)) == "general");
  CHECK(std::string(label_name(Label::FundRaising)) == "fund_raising");
  CHECK(std::string(label_name(Label::MergerAcquisition)) == "m_and_a");
  for (Label label : kAllLabels) CHECK(label_from_name(label_name(label)) == label);
  CHECK(!label_from_name("merger").has_value());
  CHECK(!label_from_name("").has_value());
}

TEST_CASE("parse_article extracts headline and sentences") {
  const Article a = parse_article(
      "<headline>Quilbra files annual report</headline>\n"
      "<Synopsis>Results were strong. Growth continued across the sector.</Synopsis>\n");
  CHECK(a.headline == "Quilbra files annual report");
  REQUIRE(a.synopsis_sentences.size() == 2);
  CHECK(a.synopsis_sentences[0] == "Results were strong.");
  CHECK(a.synopsis_sentences[1] == "Growth continued across the sector.");
  CHECK(!a.label.has_value());
  CHECK(a.id.empty());
}

TEST_CASE("parse_article is case-insensitive and collapses line breaks") {
  const Article a = parse_article(
      "<HEADLINE>Split\nheadline</HEADLINE>\n<synopsis>One\nsentence here.</synopsis>");
  CHECK(a.headline == "Split headline");
  REQUIRE(a.synopsis_sentences.size() == 1);
  CHECK(a.synopsis_sentences[0] == "One sentence here.");
}

TEST_CASE("parse_article truncates the synopsis to three sentences") {
  const Article a = parse_article(
      "<headline>h</headline>\n"
      "<Synopsis>First one. Second one. Third one. Fourth one.</Synopsis>");
  REQUIRE(a.synopsis_sentences.size() == 3);
  CHECK(a.synopsis_sentences[2] == "Third one.");
}

TEST_CASE("parse_article error cases") {
  CHECK(code_of([] { parse_article("<Synopsis>Only text.</Synopsis>"); }) ==
        ErrorCode::MissingTag);
  CHECK(code_of([] { parse_article("<headline>h</headline>"); }) == ErrorCode::MissingTag);
  CHECK(code_of([] {
          parse_article("<headline>  </headline>\n<Synopsis>Text.</Synopsis>");
        }) == ErrorCode::EmptyContent);
  CHECK(code_of([] {
          parse_article("<headline>h\n<Synopsis>Text.</Synopsis>");
        }) == ErrorCode::MalformedTag);
}

TEST_CASE("serialize then parse preserves generated articles") {
  const auto articles = testsupport::make_directional_corpus(30, 5);
  for (const Article& a : articles) {
    const Article back = parse_article(serialize_article(a));
    CHECK(back.headline == a.headline);
    CHECK(back.synopsis_sentences == a.synopsis_sentences);
  }
}

TEST_CASE("load_corpus assigns positional ids and applies labels") {
  testsupport::TempDir dir;
  const auto articles = testsupport::make_directional_corpus(12, 7);
  const auto files = testsupport::write_corpus_files(dir.path(), articles);

  const auto loaded = load_corpus(files.corpus.string(), files.labels.string());
  REQUIRE(loaded.size() == articles.size());
  CHECK(loaded.front().id == "a000001");
  CHECK(loaded.back().id == "a000012");
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    REQUIRE(loaded[i].label.has_value());
    CHECK(loaded[i].label == articles[i].label);
    CHECK(loaded[i].headline == articles[i].headline);
  }
}

TEST_CASE("label sidecar error cases") {
  testsupport::TempDir dir;
  const auto articles = testsupport::make_directional_corpus(3, 9);
  const auto files = testsupport::write_corpus_files(dir.path(), articles);

  write_file_atomic(dir.file("bad_name.tsv"), "a000001\tgeneral\na000002\tmerger\n");
  CHECK(code_of([&] { load_corpus(files.corpus.string(), dir.file("bad_name.tsv").string()); }) ==
        ErrorCode::UnknownLabelName);

  write_file_atomic(dir.file("dangling.tsv"),
                    "a000001\tgeneral\na000002\tgeneral\na000003\tgeneral\na000099\tgeneral\n");
  CHECK(code_of([&] { load_corpus(files.corpus.string(), dir.file("dangling.tsv").string()); }) ==
        ErrorCode::DanglingLabel);

  write_file_atomic(dir.file("dup.tsv"), "a000001\tgeneral\na000001\tm_and_a\n");
  CHECK(code_of([&] { load_corpus(files.corpus.string(), dir.file("dup.tsv").string()); }) ==
        ErrorCode::DuplicateArticleId);

  // every article must end up labeled
  write_file_atomic(dir.file("partial.tsv"), "a000001\tgeneral\n");
  CHECK_THROWS_AS(load_corpus(files.corpus.string(), dir.file("partial.tsv").string()), Error);
}

TEST_CASE("split_corpus apportions each class by largest remainder") {
  const auto articles = testsupport::make_labeled_corpus({4179, 4121, 746}, 3);
  const CorpusSplit split = split_corpus(articles, kDefaultRatios, 17);

  CHECK(split.train.size() == 6332);
  CHECK(split.validation.size() == 1809);
  CHECK(split.test.size() == 905);

  auto count = [](const std::vector<Article>& part, Label label) {
    std::int64_t n = 0;
    for (const Article& a : part)
      if (a.label == label) ++n;
    return n;
  };
  CHECK(count(split.train, Label::GeneralNews) == 2925);
  CHECK(count(split.validation, Label::GeneralNews) == 836);
  CHECK(count(split.test, Label::GeneralNews) == 418);
  CHECK(count(split.train, Label::FundRaising) == 2885);
  CHECK(count(split.validation, Label::FundRaising) == 824);
  CHECK(count(split.test, Label::FundRaising) == 412);
  CHECK(count(split.train, Label::MergerAcquisition) == 522);
  CHECK(count(split.validation, Label::MergerAcquisition) == 149);
  CHECK(count(split.test, Label::MergerAcquisition) == 75);
}

TEST_CASE("split_corpus is deterministic and seed-sensitive") {
  auto articles = testsupport::make_directional_corpus(90, 21);
  for (std::size_t i = 0; i < articles.size(); ++i)
    articles[i].id = "a" + std::to_string(i + 1);

  auto ids = [](const std::vector<Article>& part) {
    std::vector<std::string> out;
    for (const Article& a : part) out.push_back(a.id);
    return out;
  };
  const CorpusSplit s1 = split_corpus(articles, kDefaultRatios, 5);
  const CorpusSplit s2 = split_corpus(articles, kDefaultRatios, 5);
  CHECK(ids(s1.train) == ids(s2.train));
  CHECK(ids(s1.validation) == ids(s2.validation));
  CHECK(ids(s1.test) == ids(s2.test));

  const CorpusSplit s3 = split_corpus(articles, kDefaultRatios, 6);
  CHECK(ids(s1.train) != ids(s3.train));

  // partition: every article lands in exactly one split
  std::set<std::string> seen;
  for (const auto* part : {&s1.train, &s1.validation, &s1.test})
    for (const Article& a : *part) CHECK(seen.insert(a.id).second);
  CHECK(seen.size() == articles.size());

  // corpus order is kept inside each split
  for (const auto* part : {&s1.train, &s1.validation, &s1.test}) {
    for (std::size_t i = 1; i < part->size(); ++i)
      CHECK(std::stoi((*part)[i - 1].id.substr(1)) < std::stoi((*part)[i].id.substr(1)));
  }
}

TEST_CASE("split_corpus routes unlabeled articles too") {
  std::vector<Article> articles(10);
  for (std::size_t i = 0; i < articles.size(); ++i) {
    articles[i].headline = "h";
    articles[i].synopsis_sentences = {"Sentence."};
  }
  const CorpusSplit split = split_corpus(articles, kDefaultRatios, 1);
  CHECK(split.train.size() == 7);
  CHECK(split.validation.size() == 2);
  CHECK(split.test.size() == 1);
}

TEST_CASE("split_corpus rejects bad input") {
  CHECK(code_of([] { split_corpus({}, kDefaultRatios, 1); }) == ErrorCode::EmptyCorpus);
  std::vector<Article> one(1);
  one[0].synopsis_sentences = {"S."};
  CHECK(code_of([&] { split_corpus(one, {0.5, 0.5, 0.5}, 1); }) == ErrorCode::BadRatios);
  CHECK(code_of([&] { split_corpus(one, {1.0, 0.0, 0.0}, 1); }) == ErrorCode::BadRatios);
  CHECK(code_of([&] { split_corpus(one, {0.8, 0.3, -0.1}, 1); }) == ErrorCode::BadRatios);
}

TEST_CASE("corpus_stats counts a hand-checked fixture") {
  // Detached punctuation counts as a token and is outside the lexicon, so a
  // trailing "." adds one word and one illegitimate word.
  Article a;
  a.headline = "Zorvex expanded trading";  // Zorvex is ILGTE
  a.synopsis_sentences = {"Revenue grew $40.6 during 2004."};  // grew and "." are ILGTE
  a.label = Label::GeneralNews;

  Article b;
  b.headline = "Steady quarter";
  b.synopsis_sentences = {"Volume was higher.", "Outlook is steady."};  // was/is/"."/"." ILGTE
  // b stays unlabeled

  const auto lexicon = testsupport::make_lexicon();
  const CorpusStats stats = corpus_stats({a, b}, lexicon);
  CHECK(stats.articles == 2);
  CHECK(stats.sentences == 2 + 3);
  CHECK(stats.words == 9 + 10);
  CHECK(stats.illegitimate_words == 3 + 4);
  CHECK(stats.label_counts[0] == 1);
  CHECK(stats.label_counts[1] == 0);
  CHECK(stats.label_counts[2] == 0);
}

TEST_CASE("embedding file round-trips bit-exactly") {
  testsupport::TempDir dir;
  EmbeddingMatrix m = testsupport::random_embeddings({"a000001", "a000002", "a000003"}, 2, 4, 3);
  m.data[0] = -0.0f;
  m.data[5] = 0.0f;
  m.data[9] = 1.17549421e-38f;

  const auto path = dir.file("toy.embv").string();
  write_embeddings(m, path);
  const EmbeddingMatrix back = read_embeddings(path);

  CHECK(back.row_count == m.row_count);
  CHECK(back.steps == m.steps);
  CHECK(back.dim == m.dim);
  CHECK(back.article_ids == m.article_ids);
  REQUIRE(back.data.size() == m.data.size());
  CHECK(std::memcmp(back.data.data(), m.data.data(), m.data.size() * sizeof(float)) == 0);
  CHECK(std::signbit(back.data[0]));
  CHECK(back.data[0] == 0.0f);

  REQUIRE(back.row_for("a000002").has_value());
  CHECK(*back.row_for("a000002") == 1);
  CHECK(back.row(1)[0] == m.data[8]);
  CHECK(!back.row_for("a999999").has_value());
}

TEST_CASE("embedding decode rejects malformed payloads") {
  const EmbeddingMatrix m = testsupport::random_embeddings({"x1", "x2"}, 1, 3, 4);
  std::vector<std::uint8_t> good = encode_embeddings(m);

  auto decode = [](std::vector<std::uint8_t> bytes) {
    return code_of([&] { decode_embeddings(bytes, "buf"); });
  };

  std::vector<std::uint8_t> bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(decode(bad_magic) == ErrorCode::BadMagic);

  std::vector<std::uint8_t> bad_version = good;
  bad_version[4] = 9;
  CHECK(decode(bad_version) == ErrorCode::VersionUnsupported);

  std::vector<std::uint8_t> truncated(good.begin(), good.end() - 3);
  CHECK(decode(truncated) == ErrorCode::TruncatedPayload);

  std::vector<std::uint8_t> trailing = good;
  trailing.push_back(0);
  CHECK(decode(trailing) == ErrorCode::TruncatedPayload);

  EmbeddingMatrix dup = m;
  dup.article_ids[1] = dup.article_ids[0];
  CHECK(code_of([&] { decode_embeddings(encode_embeddings(dup), "buf"); }) ==
        ErrorCode::DuplicateArticleId);
}
