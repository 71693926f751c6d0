#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "newsclf/corpus/article.hpp"
#include "newsclf/preprocess/encode.hpp"
#include "newsclf/preprocess/lexicon.hpp"
#include "newsclf/preprocess/pos_tagger.hpp"
#include "newsclf/preprocess/text.hpp"
#include "newsclf/preprocess/token_class.hpp"
#include "newsclf/preprocess/vocab.hpp"
#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"
#include "support/gen.hpp"

using namespace newsclf;
using namespace newsclf::preprocess;

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

using V = std::vector<std::string>;

}  // namespace

TEST_CASE("tokenize splits hyphens and detaches edge punctuation") {
  CHECK(tokenize("re-construct") == V{"re", "construct"});
  CHECK(tokenize("state-of-the-art") == V{"state", "of", "the", "art"});
  CHECK(tokenize("Hello, world!") == V{"Hello", ",", "world", "!"});
  CHECK(tokenize("(nested \"quote\").") == V{"(", "nested", "\"", "quote", "\"", ")", "."});
  CHECK(tokenize("  spaced\tout\nlines ") == V{"spaced", "out", "lines"});
  CHECK(tokenize("") == V{});
  CHECK(tokenize("--") == V{});
}

TEST_CASE("tokenize keeps dollar amounts whole") {
  CHECK(tokenize("raised $40.6 million.") == V{"raised", "$40.6", "million", "."});
  CHECK(tokenize("$1,200,000") == V{"$1,200,000"});
  // interior periods survive, only edge punctuation is peeled
  CHECK(tokenize("visit x.ai today") == V{"visit", "x.ai", "today"});
}

TEST_CASE("split_sentences handles boundaries, digits and abbreviations") {
  CHECK(split_sentences("One here. Two there.") == V{"One here.", "Two there."});
  CHECK(split_sentences("Price rose to $40.6 overnight.") ==
        V{"Price rose to $40.6 overnight."});
  CHECK(split_sentences("Acme Inc. raised funds. More news followed.") ==
        V{"Acme Inc. raised funds.", "More news followed."});
  CHECK(split_sentences("Based in the U.S. market. Shares rose.") ==
        V{"Based in the U.S. market.", "Shares rose."});
  CHECK(split_sentences("He said \"done.\" Then left.") == V{"He said \"done.\"", "Then left."});
  CHECK(split_sentences("no capital follows. so no split") ==
        V{"no capital follows. so no split"});
  CHECK(split_sentences("Question? Answer! Statement.") ==
        V{"Question?", "Answer!", "Statement."});
}

TEST_CASE("classify_token goldens") {
  const Lexicon lexicon({"revenue", "growth", "construct"});
  CHECK(classify_token("$40.6", lexicon) == TokenClass::DOLLAR_NUM);
  CHECK(classify_token("$5", lexicon) == TokenClass::DOLLAR_NUM);
  CHECK(classify_token("$1,200,000.50", lexicon) == TokenClass::DOLLAR_NUM);
  CHECK(classify_token("2004", lexicon) == TokenClass::NUM);
  CHECK(classify_token("40,000.5", lexicon) == TokenClass::NUM);
  CHECK(classify_token("Revenue", lexicon) == TokenClass::LEGIT);
  CHECK(classify_token("GROWTH", lexicon) == TokenClass::LEGIT);
  CHECK(classify_token("Zorvex", lexicon) == TokenClass::ILGTE);
  CHECK(classify_token("$", lexicon) == TokenClass::ILGTE);
  CHECK(classify_token("12,34", lexicon) == TokenClass::ILGTE);   // bad comma group
  CHECK(classify_token("1234,567", lexicon) == TokenClass::ILGTE);
  CHECK(classify_token("40.", lexicon) == TokenClass::ILGTE);     // dangling decimal point
  CHECK(classify_token(".", lexicon) == TokenClass::ILGTE);
}

TEST_CASE("word_context flags") {
  const Lexicon lexicon({"revenue", "intel"});
  CHECK(word_context("Revenue", lexicon) == ContextFlags{1, 1, 0});
  CHECK(word_context("revenue", lexicon) == ContextFlags{0, 1, 0});
  CHECK(word_context("Zorvex", lexicon) == ContextFlags{1, 0, 0});
  CHECK(word_context("intel.com", lexicon) == ContextFlags{0, 0, 1});
  CHECK(word_context("Graphcore.AI", lexicon) == ContextFlags{1, 0, 1});
  CHECK(word_context("x.ai", lexicon) == ContextFlags{0, 0, 1});
  CHECK(word_context("aid", lexicon) == ContextFlags{0, 0, 0});
  CHECK(word_context("$40.6", lexicon) == ContextFlags{0, 0, 0});
}

TEST_CASE("vocab assigns dense ids above the reserved block") {
  // The constructor keeps the given word order; build_vocab hands it a
  // sorted list, so saved vocabularies reload with identical ids.
  const Vocab vocab({"analysts", "growth", "revenue"});
  CHECK(vocab.size() == Vocab::kReserved + 3);
  CHECK(vocab.words() == V{"analysts", "growth", "revenue"});
  CHECK(vocab.id_of_word("analysts") == 5);
  CHECK(vocab.id_of_word("growth") == 6);
  CHECK(vocab.id_of_word("revenue") == 7);
  CHECK(!vocab.id_of_word("sector").has_value());

  CHECK(vocab.id_for("Revenue", TokenClass::LEGIT) == 7);
  CHECK(vocab.id_for("sector", TokenClass::LEGIT) == Vocab::kUnk);
  CHECK(vocab.id_for("Zorvex", TokenClass::ILGTE) == Vocab::kIlgte);
  CHECK(vocab.id_for("2004", TokenClass::NUM) == Vocab::kNum);
  CHECK(vocab.id_for("$40.6", TokenClass::DOLLAR_NUM) == Vocab::kDollarNum);
}

TEST_CASE("build_vocab applies the frequency floor to legit tokens only") {
  corpus::Article a;
  a.headline = "Revenue revenue growth";
  a.synopsis_sentences = {"Zorvex Zorvex Zorvex 2004 growth market."};
  const Lexicon lexicon({"revenue", "growth", "market"});

  const Vocab v2 = build_vocab({a}, lexicon, 2);
  CHECK(v2.words() == V{"growth", "revenue"});  // market once, Zorvex never legit

  const Vocab v1 = build_vocab({a}, lexicon, 1);
  CHECK(v1.words() == V{"growth", "market", "revenue"});

  CHECK(code_of([&] { build_vocab({}, lexicon, 2); }) == ErrorCode::EmptyCorpus);
  CHECK(code_of([&] { build_vocab({a}, lexicon, 0); }) == ErrorCode::ConfigError);
}

TEST_CASE("vocab save and load round-trip with a stable hash") {
  testsupport::TempDir dir;
  const Vocab vocab({"growth", "revenue", "analysts"});
  const auto path = dir.file("vocab.txt").string();
  vocab.save(path);
  const Vocab back = Vocab::load(path);
  CHECK(back.words() == vocab.words());
  CHECK(back.content_hash() == vocab.content_hash());
  CHECK(Vocab({"growth", "revenue"}).content_hash() != vocab.content_hash());
}

TEST_CASE("encode_records lays out ids, features and mask") {
  const Lexicon lexicon = testsupport::make_lexicon();
  const Vocab vocab({"growth", "revenue"});

  corpus::Article article;
  article.headline = "Zorvex.com growth";
  article.synopsis_sentences = {"Revenue was $40.6."};

  std::vector<TokenRecord> records;
  for (const std::string& tok : tokenize(article.headline))
    records.push_back(make_token_record(tok, lexicon));
  for (const std::string& tok : tokenize(article.synopsis_sentences[0]))
    records.push_back(make_token_record(tok, lexicon));
  REQUIRE(records.size() == 6);  // Zorvex.com growth Revenue was $40.6 .

  const EncodedSequence seq = encode_records(records, vocab, 8);
  CHECK(seq.steps == 8);
  CHECK(seq.token_ids ==
        std::vector<std::int32_t>{Vocab::kIlgte, 5, 6, Vocab::kIlgte, Vocab::kDollarNum,
                                  Vocab::kIlgte, Vocab::kPad, Vocab::kPad});
  CHECK(seq.mask == std::vector<float>{1, 1, 1, 1, 1, 1, 0, 0});
  CHECK(seq.surfaces[0] == "Zorvex.com");
  CHECK(seq.surfaces[6].empty());
  REQUIRE(seq.context_features.size() == 8 * kContextFlags);
  // rows: cap, legit, domain per step
  const std::vector<float> expected = {1, 0, 1,  0, 1, 0,  1, 1, 0,  0, 0, 0,
                                       0, 0, 0,  0, 0, 0,  0, 0, 0,  0, 0, 0};
  CHECK(seq.context_features == expected);
  CHECK(seq.pos_ids == std::vector<std::int32_t>(8, 0));  // records carried no tags

  const EncodedSequence cut = encode_records(records, vocab, 3);
  CHECK(cut.token_ids == std::vector<std::int32_t>{Vocab::kIlgte, 5, 6});
  CHECK(cut.mask == std::vector<float>{1, 1, 1});
}

TEST_CASE("encode_sequence tags real positions with valid pos ids") {
  const Lexicon lexicon = testsupport::make_lexicon();
  const Vocab vocab({"growth", "revenue"});
  corpus::Article article;
  article.headline = "Revenue growth";
  article.synopsis_sentences = {"Growth was steady across the sector."};

  const EncodedSequence seq =
      encode_sequence(article, vocab, lexicon, PosTagger::bundled(), 16);
  REQUIRE(seq.steps == 16);
  for (int t = 0; t < 16; ++t) {
    if (seq.mask[static_cast<std::size_t>(t)] == 1.0f) {
      CHECK(seq.pos_ids[static_cast<std::size_t>(t)] > 0);
      CHECK(seq.pos_ids[static_cast<std::size_t>(t)] < kNumPosTags);
    } else {
      CHECK(seq.pos_ids[static_cast<std::size_t>(t)] == 0);
    }
  }
}

TEST_CASE("article_records sidecar overload applies given tags") {
  const Lexicon lexicon = testsupport::make_lexicon();
  corpus::Article article;
  article.headline = "Revenue growth";
  article.synopsis_sentences = {"Shares rose."};
  // Revenue growth Shares rose . -> 5 tokens
  const std::vector<int> tags = {pos_tag_id("NN"), pos_tag_id("NN"), pos_tag_id("NNS"),
                                 pos_tag_id("VBD"), pos_tag_id(".")};
  const auto records = article_records(article, lexicon, tags);
  REQUIRE(records.size() == 5);
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(records[i].pos_tag == tags[i]);

  CHECK(code_of([&] { article_records(article, lexicon, std::vector<int>{1, 2}); }) ==
        ErrorCode::SidecarLengthMismatch);
}

TEST_CASE("pos tag table round-trips") {
  CHECK(pos_tag_id(pos_tag_name(0)) == 0);
  for (int id = 1; id < kNumPosTags; ++id) {
    const std::string name = pos_tag_name(id);
    CHECK(!name.empty());
    CHECK(pos_tag_id(name) == id);
  }
  CHECK(pos_tag_id("BOGUS") == -1);
}

TEST_CASE("bundled tagger fits its own sample and tags deterministically") {
  const PosTagger& tagger = PosTagger::bundled();
  CHECK(tagger.accuracy(bundled_pos_sample()) > 0.9);

  const std::vector<std::string> tokens = {"Shares", "of", "Zorvex", "rose", "today", "."};
  const std::vector<int> once = tagger.tag(tokens);
  REQUIRE(once.size() == tokens.size());
  for (int tag : once) {
    CHECK(tag > 0);
    CHECK(tag < kNumPosTags);
  }
  CHECK(tagger.tag(tokens) == once);
}

TEST_CASE("pos sidecar loads and validates") {
  testsupport::TempDir dir;
  const auto path = dir.file("tags.tsv").string();
  write_file_atomic(path, "a000001\tNN VBD .\na000002\tNNS\n");
  const auto tags = load_pos_sidecar(path);
  REQUIRE(tags.size() == 2);
  CHECK(tags.at("a000001") ==
        std::vector<int>{pos_tag_id("NN"), pos_tag_id("VBD"), pos_tag_id(".")});
  CHECK(tags.at("a000002") == std::vector<int>{pos_tag_id("NNS")});

  write_file_atomic(dir.file("notab.tsv"), "a000001 NN\n");
  CHECK(code_of([&] { load_pos_sidecar(dir.file("notab.tsv").string()); }) == ErrorCode::IoError);
  write_file_atomic(dir.file("badtag.tsv"), "a000001\tNN QQ\n");
  CHECK(code_of([&] { load_pos_sidecar(dir.file("badtag.tsv").string()); }) ==
        ErrorCode::IoError);
}

TEST_CASE("char ids fold case and pad to max_chars") {
  CHECK(char_embed_ids("Az9", 5) == std::vector<std::int32_t>{1, 26, 36, 0, 0});
  CHECK(char_embed_ids("a-b", 3) == std::vector<std::int32_t>{1, kCharOther, 2});
  CHECK(char_embed_ids("zorvexcorp", 4) == std::vector<std::int32_t>{26, 15, 18, 22});
  CHECK(char_embed_ids("", 2) == std::vector<std::int32_t>{0, 0});
  CHECK(char_for_id(0) == '\0');
  CHECK(char_for_id(1) == 'a');
  CHECK(char_for_id(27) == '0');
  CHECK(char_for_id(kCharOther) == '?');
}
