#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "newsclf/models/config.hpp"
#include "newsclf/models/heads.hpp"
#include "newsclf/models/predict.hpp"
#include "newsclf/models/pretrained.hpp"
#include "newsclf/models/rnn_plus.hpp"
#include "newsclf/pipeline/train.hpp"
#include "newsclf/preprocess/encode.hpp"
#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"
#include "newsclf/util/rng.hpp"
#include "support/gen.hpp"

using namespace newsclf;
using namespace newsclf::models;
using doctest::Approx;

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

RnnPlusConfig tiny_rnn_config() {
  RnnPlusConfig cfg;
  cfg.steps = 6;
  cfg.vocab_size = 11;
  cfg.word_embed_dim = 5;
  cfg.pos_embed_dim = 4;
  cfg.gru_hidden = 4;
  cfg.fc_units = 5;
  return cfg;
}

preprocess::EncodedSequence toy_sequence(int steps, int live, std::uint64_t seed,
                                         int vocab_size) {
  preprocess::EncodedSequence seq;
  seq.steps = steps;
  seq.token_ids.assign(static_cast<std::size_t>(steps), 0);
  seq.pos_ids.assign(static_cast<std::size_t>(steps), 0);
  seq.context_features.assign(static_cast<std::size_t>(steps * preprocess::kContextFlags), 0.0f);
  seq.mask.assign(static_cast<std::size_t>(steps), 0.0f);
  seq.surfaces.assign(static_cast<std::size_t>(steps), "");
  Rng rng(seed);
  for (int t = 0; t < live; ++t) {
    const std::size_t st = static_cast<std::size_t>(t);
    seq.token_ids[st] = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(vocab_size)));
    seq.pos_ids[st] = 1 + static_cast<std::int32_t>(rng.below(preprocess::kNumPosTags - 1));
    for (int f = 0; f < preprocess::kContextFlags; ++f)
      seq.context_features[st * preprocess::kContextFlags + static_cast<std::size_t>(f)] =
          static_cast<float>(rng.below(2));
    seq.mask[st] = 1.0f;
    seq.surfaces[st] = "tok";
  }
  return seq;
}

}  // namespace

TEST_CASE("config validation and name round-trips") {
  RnnPlusConfig cfg = tiny_rnn_config();
  cfg.validate();
  cfg.gru_hidden = 0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
  cfg = tiny_rnn_config();
  cfg.num_classes = 2;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
  cfg = tiny_rnn_config();
  cfg.vocab_size = 0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);

  FineTuneConfig head;
  head.validate();
  head.input_dim = -1;
  CHECK(code_of([&] { head.validate(); }) == ErrorCode::ConfigError);

  for (Architecture a :
       {Architecture::RnnPlus, Architecture::DenseHead, Architecture::AttentionHead})
    CHECK(architecture_from_name(architecture_name(a)) == a);
  CHECK(!architecture_from_name("rnn").has_value());
  for (Pooling p : {Pooling::Mean, Pooling::Flatten})
    CHECK(pooling_from_name(pooling_name(p)) == p);
  CHECK(!pooling_from_name("max").has_value());
}

TEST_CASE("parameter counts match the closed forms and the registrations") {
  RnnPlusConfig cfg = tiny_rnn_config();
  RnnPlusModel model(cfg);
  CHECK(model.params().total_values() == rnn_plus_param_count(cfg));

  // independent hand count for the tiny config
  const std::int64_t gru_word = 3 * (4 * 5 + 4 * 4 + 4);
  const std::int64_t gru_ctx = 3 * (4 * (4 + 3) + 4 * 4 + 4);
  std::int64_t expected = 11 * 5 + 46 * 4;
  expected += 2 * gru_word + 2 * gru_ctx;
  expected += 2 * (5 * 8 + 5);
  expected += 3 * 10 + 3;
  CHECK(rnn_plus_param_count(cfg) == expected);

  cfg.use_char_branch = true;
  RnnPlusModel with_chars(cfg);
  CHECK(with_chars.params().total_values() == rnn_plus_param_count(cfg));
  CHECK(rnn_plus_param_count(cfg) == expected + 38 * 16 + 5 * 16 + 5);

  FineTuneConfig head;
  head.input_steps = 3;
  head.input_dim = 7;
  head.fc_units = 6;
  CHECK(DenseHeadModel(head).params().total_values() == dense_head_param_count(head));
  CHECK(dense_head_param_count(head) == 6 * 7 + 6 + 3 * 6 + 3);
  head.pooling = Pooling::Flatten;
  CHECK(DenseHeadModel(head).params().total_values() == dense_head_param_count(head));
  CHECK(dense_head_param_count(head) == 6 * 21 + 6 + 3 * 6 + 3);
  head.pooling = Pooling::Mean;
  CHECK(AttentionHeadModel(head).params().total_values() == attention_head_param_count(head));
  CHECK(attention_head_param_count(head) == 64 * 7 + 64 + 64 + 6 * 7 + 6 + 3 * 6 + 3);
}

TEST_CASE("rnn_plus forward yields a probability vector deterministically") {
  const RnnPlusConfig cfg = tiny_rnn_config();
  RnnPlusModel model(cfg);
  model.init(3);
  const auto seq = toy_sequence(cfg.steps, 4, 5, cfg.vocab_size);

  nn::Tape tape(&model.params());
  const nn::Tensor probs = tape.value(model.forward(tape, seq));
  REQUIRE(probs.shape == std::vector<int>{3});
  double sum = 0.0;
  for (float p : probs.data) {
    CHECK(p > 0.0f);
    sum += p;
  }
  CHECK(sum == Approx(1.0).epsilon(1e-6));

  RnnPlusModel again(cfg);
  again.init(3);
  nn::Tape tape2(&again.params());
  const nn::Tensor probs2 = tape2.value(again.forward(tape2, seq));
  CHECK(probs.data == probs2.data);

  nn::Tape tape3(&model.params());
  const int loss = model.loss(tape3, seq, 2);
  nn::Tape tape4(&model.params());
  const nn::Tensor p4 = tape4.value(model.forward(tape4, seq));
  CHECK(tape3.scalar_value(loss) ==
        Approx(-std::log(static_cast<double>(p4.data[2]))).epsilon(1e-6));
}

TEST_CASE("rnn_plus rejects bad sequences") {
  const RnnPlusConfig cfg = tiny_rnn_config();
  RnnPlusModel model(cfg);
  model.init(3);

  auto wrong_steps = toy_sequence(cfg.steps + 1, 3, 5, cfg.vocab_size);
  nn::Tape tape(&model.params());
  CHECK(code_of([&] { model.forward(tape, wrong_steps); }) == ErrorCode::ShapeMismatch);

  auto bad_id = toy_sequence(cfg.steps, 3, 5, cfg.vocab_size);
  bad_id.token_ids[0] = static_cast<std::int32_t>(cfg.vocab_size);
  nn::Tape tape2(&model.params());
  CHECK(code_of([&] { model.forward(tape2, bad_id); }) == ErrorCode::VocabMismatch);
}

TEST_CASE("rnn_plus output is bit-identical under appended pad steps") {
  const RnnPlusConfig small = tiny_rnn_config();
  RnnPlusConfig padded = small;
  padded.steps = small.steps + 3;

  RnnPlusModel a(small);
  a.init(7);
  RnnPlusModel b(padded);
  pipeline::restore_params(b.params(), pipeline::snapshot_params(a.params()));

  for (std::uint64_t c = 0; c < 10; ++c) {
    const int live = 1 + static_cast<int>(c % static_cast<std::uint64_t>(small.steps));
    const auto seq = toy_sequence(small.steps, live, 200 + c, small.vocab_size);
    auto longer = toy_sequence(padded.steps, live, 200 + c, small.vocab_size);
    // same live prefix, pad tail stays PAD/zero/masked
    nn::Tape ta(&a.params());
    nn::Tape tb(&b.params());
    const nn::Tensor pa = ta.value(a.forward(ta, seq));
    const nn::Tensor pb = tb.value(b.forward(tb, longer));
    CHECK(std::memcmp(pa.data.data(), pb.data.data(), pa.data.size() * sizeof(float)) == 0);
  }
}

TEST_CASE("char branch swaps illegitimate rows only") {
  RnnPlusConfig cfg = tiny_rnn_config();
  cfg.use_char_branch = true;
  RnnPlusModel with_chars(cfg);
  with_chars.init(9);

  RnnPlusConfig plain_cfg = tiny_rnn_config();
  RnnPlusModel plain(plain_cfg);
  // share the common parameters so outputs are comparable
  auto snapshot = pipeline::snapshot_params(with_chars.params());
  snapshot.resize(static_cast<std::size_t>(plain.params().count()));
  pipeline::restore_params(plain.params(), snapshot);

  // no ILGTE ids: both models agree bit for bit
  auto seq = toy_sequence(cfg.steps, 4, 10, cfg.vocab_size);
  for (int t = 0; t < 4; ++t)
    if (seq.token_ids[static_cast<std::size_t>(t)] == preprocess::Vocab::kIlgte)
      seq.token_ids[static_cast<std::size_t>(t)] = 5;
  nn::Tape t1(&with_chars.params());
  nn::Tape t2(&plain.params());
  const nn::Tensor p1 = t1.value(with_chars.forward(t1, seq));
  const nn::Tensor p2 = t2.value(plain.forward(t2, seq));
  CHECK(p1.data == p2.data);

  // an ILGTE id routes through the char projection and changes the output
  seq.token_ids[1] = preprocess::Vocab::kIlgte;
  seq.surfaces[1] = "zorvex";
  nn::Tape t3(&with_chars.params());
  nn::Tape t4(&plain.params());
  const nn::Tensor p3 = t3.value(with_chars.forward(t3, seq));
  const nn::Tensor p4 = t4.value(plain.forward(t4, seq));
  CHECK(p3.data != p4.data);
}

TEST_CASE("dense head pools by mean or flatten") {
  FineTuneConfig cfg;
  cfg.input_steps = 3;
  cfg.input_dim = 4;
  cfg.fc_units = 5;

  DenseHeadModel mean_model(cfg);
  mean_model.init(11);
  nn::Tensor emb({3, 4});
  Rng rng(12);
  for (float& v : emb.data) v = rng.uniform(-1.0f, 1.0f);

  nn::Tape tape(&mean_model.params());
  const nn::Tensor probs = tape.value(mean_model.forward(tape, emb));
  REQUIRE(probs.shape == std::vector<int>{3});
  double sum = 0.0;
  for (float p : probs.data) sum += p;
  CHECK(sum == Approx(1.0).epsilon(1e-6));

  // mean pooling collapses rows: feeding the row-mean three times agrees
  nn::Tensor averaged({3, 4});
  for (int c = 0; c < 4; ++c) {
    float m = (emb.at(0, c) + emb.at(1, c) + emb.at(2, c)) / 3.0f;
    for (int r = 0; r < 3; ++r) averaged.at(r, c) = m;
  }
  nn::Tape tape2(&mean_model.params());
  const nn::Tensor probs2 = tape2.value(mean_model.forward(tape2, averaged));
  for (int k = 0; k < 3; ++k)
    CHECK(probs2.data[static_cast<std::size_t>(k)] ==
          Approx(probs.data[static_cast<std::size_t>(k)]).epsilon(1e-4));

  FineTuneConfig flat_cfg = cfg;
  flat_cfg.pooling = Pooling::Flatten;
  DenseHeadModel flat_model(flat_cfg);
  flat_model.init(11);
  nn::Tape tape3(&flat_model.params());
  const nn::Tensor probs3 = tape3.value(flat_model.forward(tape3, emb));
  REQUIRE(probs3.shape == std::vector<int>{3});

  nn::Tensor wrong({2, 4});
  CHECK(code_of([&] {
          nn::Tape t(&mean_model.params());
          mean_model.forward(t, wrong);
        }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("attention head masks zero rows and rejects empty input") {
  FineTuneConfig cfg;
  cfg.input_steps = 3;
  cfg.input_dim = 4;
  cfg.fc_units = 5;
  AttentionHeadModel model(cfg);
  model.init(13);

  nn::Tensor emb({3, 4});
  Rng rng(14);
  for (float& v : emb.data) v = rng.uniform(-1.0f, 1.0f);
  for (int c = 0; c < 4; ++c) emb.at(2, c) = 0.0f;  // article with two sentences

  std::vector<float> alpha;
  nn::Tape tape(&model.params());
  const nn::Tensor probs = tape.value(model.forward(tape, emb, &alpha));
  REQUIRE(probs.shape == std::vector<int>{3});
  REQUIRE(alpha.size() == 3);
  CHECK(alpha[2] == 0.0f);
  CHECK(alpha[0] + alpha[1] == Approx(1.0f).epsilon(1e-6));

  nn::Tensor zeros({3, 4});
  CHECK(code_of([&] {
          nn::Tape t(&model.params());
          model.forward(t, zeros);
        }) == ErrorCode::AllMasked);

  nn::Tensor wrong({3, 5});
  CHECK(code_of([&] {
          nn::Tape t(&model.params());
          model.forward(t, wrong);
        }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("argmax breaks ties toward the lowest class index") {
  CHECK(argmax_label({0.2f, 0.5f, 0.3f}) == corpus::Label::FundRaising);
  CHECK(argmax_label({0.4f, 0.4f, 0.2f}) == corpus::Label::GeneralNews);
  CHECK(argmax_label({0.3f, 0.3f, 0.4f}) == corpus::Label::MergerAcquisition);
  CHECK(argmax_label({1.0f / 3.0f, 1.0f / 3.0f, 1.0f / 3.0f}) == corpus::Label::GeneralNews);
}

TEST_CASE("predict returns probabilities in input order") {
  FineTuneConfig cfg;
  cfg.input_steps = 1;
  cfg.input_dim = 4;
  cfg.fc_units = 5;
  DenseHeadModel model(cfg);
  model.init(15);

  std::vector<nn::Tensor> batch;
  for (std::uint64_t i = 0; i < 4; ++i) {
    nn::Tensor emb({1, 4});
    Rng rng(30 + i);
    for (float& v : emb.data) v = rng.uniform(-1.0f, 1.0f);
    batch.push_back(emb);
  }
  const auto predictions = predict_batch(model, batch);
  REQUIRE(predictions.size() == batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Prediction one = predict(model, batch[i]);
    CHECK(one.label == predictions[i].label);
    CHECK(one.probabilities == predictions[i].probabilities);
    CHECK(one.label == argmax_label(one.probabilities));
  }
}

TEST_CASE("pretrained vectors fill hits from the file and misses from the seed") {
  testsupport::TempDir dir;
  const preprocess::Vocab vocab({"growth", "revenue"});  // ids 5 and 6
  const auto path = dir.file("vectors.txt").string();
  write_file_atomic(path,
                    "growth 1 2 3\n"
                    "other 9 9 9\n"
                    "revenue 4 5 6\n"
                    "growth 7 8 9\n");

  const PretrainedVectors loaded = load_pretrained_word_embeddings(vocab, path, 3, 17);
  REQUIRE(loaded.matrix.shape == std::vector<int>{7, 3});
  CHECK(loaded.hit_rows == std::vector<std::int32_t>{5, 6});
  // last occurrence wins
  CHECK(loaded.matrix.at(5, 0) == 7.0f);
  CHECK(loaded.matrix.at(5, 2) == 9.0f);
  CHECK(loaded.matrix.at(6, 1) == 5.0f);
  for (int row : {0, 1, 2, 3, 4})
    for (int c = 0; c < 3; ++c) {
      CHECK(loaded.matrix.at(row, c) >= -0.5f);
      CHECK(loaded.matrix.at(row, c) <= 0.5f);
    }

  const PretrainedVectors again = load_pretrained_word_embeddings(vocab, path, 3, 17);
  CHECK(again.matrix.data == loaded.matrix.data);
  const PretrainedVectors reseeded = load_pretrained_word_embeddings(vocab, path, 3, 18);
  CHECK(reseeded.matrix.at(0, 0) != loaded.matrix.at(0, 0));
  // hits do not depend on the seed
  CHECK(reseeded.matrix.at(5, 0) == 7.0f);

  write_file_atomic(dir.file("short.txt"), "growth 1 2\n");
  CHECK(code_of([&] {
          load_pretrained_word_embeddings(vocab, dir.file("short.txt").string(), 3, 1);
        }) == ErrorCode::InconsistentDim);
  write_file_atomic(dir.file("junk.txt"), "growth a b c\n");
  CHECK(code_of([&] {
          load_pretrained_word_embeddings(vocab, dir.file("junk.txt").string(), 3, 1);
        }) == ErrorCode::BadVectorLine);
  CHECK(code_of([&] {
          load_pretrained_word_embeddings(vocab, dir.file("absent.txt").string(), 3, 1);
        }) == ErrorCode::IoError);
}

TEST_CASE("set_word_vectors freezes file rows but never class tokens") {
  RnnPlusConfig cfg = tiny_rnn_config();
  RnnPlusModel model(cfg);
  model.init(19);

  PretrainedVectors vectors;
  vectors.matrix = nn::Tensor({cfg.vocab_size, cfg.word_embed_dim});
  for (std::size_t i = 0; i < vectors.matrix.data.size(); ++i)
    vectors.matrix.data[i] = 0.01f * static_cast<float>(i);
  vectors.hit_rows = {preprocess::Vocab::kUnk, 5, 8};

  model.set_word_vectors(vectors, true);
  const auto& entry = model.params().entry(model.params().index_of("word_embed"));
  CHECK(entry.value.data == vectors.matrix.data);
  REQUIRE(entry.frozen_rows.size() == static_cast<std::size_t>(cfg.vocab_size));
  CHECK(entry.frozen_rows[5] == 1);
  CHECK(entry.frozen_rows[8] == 1);
  CHECK(entry.frozen_rows[preprocess::Vocab::kUnk] == 0);  // class tokens stay trainable
  CHECK(entry.frozen_rows[preprocess::Vocab::kPad] == 0);
  CHECK(entry.frozen_rows[6] == 0);

  RnnPlusModel unfrozen(cfg);
  unfrozen.init(19);
  unfrozen.set_word_vectors(vectors, false);
  const auto& entry2 = unfrozen.params().entry(unfrozen.params().index_of("word_embed"));
  for (std::uint8_t f : entry2.frozen_rows) CHECK(f == 0);

  PretrainedVectors wrong;
  wrong.matrix = nn::Tensor({cfg.vocab_size + 1, cfg.word_embed_dim});
  CHECK(code_of([&] { model.set_word_vectors(wrong, true); }) == ErrorCode::ShapeMismatch);
}
