#include "newsclf/models/rnn_plus.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "newsclf/preprocess/pos_tagger.hpp"
#include "newsclf/util/error.hpp"

namespace newsclf::models {

namespace {

constexpr const char* kGruSuffixes[9] = {"w_z", "u_z", "b_z", "w_r", "u_r",
                                         "b_r", "w_h", "u_h", "b_h"};

// Character ids of the surface without the trailing padding, so the mean
// pools over the real characters only. Empty surfaces keep one PAD id.
std::vector<std::int32_t> trimmed_char_ids(const std::string& surface, int max_chars) {
  std::vector<std::int32_t> ids = preprocess::char_embed_ids(surface, max_chars);
  const std::size_t real = std::min(surface.size(), static_cast<std::size_t>(max_chars));
  ids.resize(std::max<std::size_t>(real, 1));
  return ids;
}

}  // namespace

RnnPlusModel::RnnPlusModel(RnnPlusConfig config) : config_(config) {
  config_.validate();
  const int h = config_.gru_hidden;

  word_embed_ = params_.add("word_embed", {config_.vocab_size, config_.word_embed_dim});
  pos_embed_ = params_.add("pos_embed", {preprocess::kNumPosTags, config_.pos_embed_dim});

  word_fwd_ = add_gru("word_gru_fwd.", config_.word_embed_dim);
  word_bwd_ = add_gru("word_gru_bwd.", config_.word_embed_dim);
  const int ctx_dim = config_.pos_embed_dim + preprocess::kContextFlags;
  ctx_fwd_ = add_gru("ctx_gru_fwd.", ctx_dim);
  ctx_bwd_ = add_gru("ctx_gru_bwd.", ctx_dim);

  word_fc_w_ = params_.add("word_fc.w", {config_.fc_units, 2 * h});
  word_fc_b_ = params_.add("word_fc.b", {config_.fc_units});
  ctx_fc_w_ = params_.add("ctx_fc.w", {config_.fc_units, 2 * h});
  ctx_fc_b_ = params_.add("ctx_fc.b", {config_.fc_units});
  out_w_ = params_.add("out.w", {config_.num_classes, 2 * config_.fc_units});
  out_b_ = params_.add("out.b", {config_.num_classes});

  if (config_.use_char_branch) {
    char_embed_ = params_.add("char_embed", {preprocess::kCharTableRows, config_.char_embed_dim});
    char_proj_w_ = params_.add("char_proj.w", {config_.word_embed_dim, config_.char_embed_dim});
    char_proj_b_ = params_.add("char_proj.b", {config_.word_embed_dim});
  }
}

RnnPlusModel::GruIdx RnnPlusModel::add_gru(const std::string& prefix, int input_dim) {
  const int h = config_.gru_hidden;
  GruIdx idx{};
  for (int i = 0; i < 9; ++i) {
    const std::string name = prefix + kGruSuffixes[i];
    const char kind = kGruSuffixes[i][0];
    if (kind == 'w')
      idx.at[static_cast<std::size_t>(i)] = params_.add(name, {h, input_dim});
    else if (kind == 'u')
      idx.at[static_cast<std::size_t>(i)] = params_.add(name, {h, h});
    else
      idx.at[static_cast<std::size_t>(i)] = params_.add(name, {h});
  }
  return idx;
}

nn::GruNodes RnnPlusModel::nodes_of(nn::Tape& tape, const GruIdx& idx) const {
  return nn::GruNodes{tape.param(idx.at[0]), tape.param(idx.at[1]), tape.param(idx.at[2]),
                      tape.param(idx.at[3]), tape.param(idx.at[4]), tape.param(idx.at[5]),
                      tape.param(idx.at[6]), tape.param(idx.at[7]), tape.param(idx.at[8])};
}

int RnnPlusModel::forward(nn::Tape& tape, const Example& seq) {
  if (seq.steps != config_.steps)
    fail(ErrorCode::ShapeMismatch, "sequence has " + std::to_string(seq.steps) +
                                       " steps, model expects " + std::to_string(config_.steps));
  for (std::int32_t id : seq.token_ids)
    if (id < 0 || id >= config_.vocab_size)
      fail(ErrorCode::VocabMismatch,
           "token id " + std::to_string(id) + " outside vocab of " +
               std::to_string(config_.vocab_size));

  int word_rows = tape.embedding_lookup(tape.param(word_embed_), seq.token_ids);
  if (config_.use_char_branch) {
    bool replaced = false;
    std::vector<int> rows;
    rows.reserve(static_cast<std::size_t>(config_.steps));
    for (int t = 0; t < config_.steps; ++t) {
      const std::size_t st = static_cast<std::size_t>(t);
      if (seq.mask[st] != 0.0f && seq.token_ids[st] == preprocess::Vocab::kIlgte) {
        const auto char_ids = trimmed_char_ids(seq.surfaces[st], config_.max_chars);
        int chars = tape.embedding_lookup(tape.param(char_embed_), char_ids);
        int pooled = tape.mean_rows(chars);
        rows.push_back(tape.dense(pooled, tape.param(char_proj_w_), tape.param(char_proj_b_)));
        replaced = true;
      } else {
        rows.push_back(tape.slice_row(word_rows, t));
      }
    }
    if (replaced) word_rows = tape.stack_rows(rows);
  }
  int word_state = tape.bigru(word_rows, seq.mask, nodes_of(tape, word_fwd_),
                              nodes_of(tape, word_bwd_));
  int word_out = tape.relu(tape.dense(word_state, tape.param(word_fc_w_), tape.param(word_fc_b_)));

  int pos_rows = tape.embedding_lookup(tape.param(pos_embed_), seq.pos_ids);
  nn::Tensor flags({config_.steps, preprocess::kContextFlags});
  flags.data = seq.context_features;
  int ctx_rows = tape.append_features(pos_rows, flags);
  int ctx_state =
      tape.bigru(ctx_rows, seq.mask, nodes_of(tape, ctx_fwd_), nodes_of(tape, ctx_bwd_));
  int ctx_out = tape.relu(tape.dense(ctx_state, tape.param(ctx_fc_w_), tape.param(ctx_fc_b_)));

  int merged = tape.concat({word_out, ctx_out});
  return tape.softmax(tape.dense(merged, tape.param(out_w_), tape.param(out_b_)));
}

int RnnPlusModel::loss(nn::Tape& tape, const Example& seq, int label) {
  return tape.cross_entropy(forward(tape, seq), {label});
}

void RnnPlusModel::set_word_vectors(const PretrainedVectors& vectors, bool freeze) {
  nn::ParamSet::Entry& entry = params_.entry(word_embed_);
  if (vectors.matrix.shape != entry.value.shape)
    fail(ErrorCode::ShapeMismatch, "pretrained matrix is " + vectors.matrix.shape_str() +
                                       ", embedding table is " + entry.value.shape_str());
  entry.value = vectors.matrix;
  entry.frozen_rows.assign(static_cast<std::size_t>(config_.vocab_size), 0);
  if (freeze) {
    for (std::int32_t row : vectors.hit_rows)
      entry.frozen_rows[static_cast<std::size_t>(row)] = 1;
    // Class-token rows stay trainable even if the file happens to cover them.
    for (std::int32_t id :
         {preprocess::Vocab::kUnk, preprocess::Vocab::kIlgte, preprocess::Vocab::kNum,
          preprocess::Vocab::kDollarNum})
      entry.frozen_rows[static_cast<std::size_t>(id)] = 0;
  }
}

std::int64_t rnn_plus_param_count(const RnnPlusConfig& config) {
  const auto gru = [](std::int64_t in, std::int64_t h) { return 3 * (h * in + h * h + h); };
  const std::int64_t h = config.gru_hidden;
  const std::int64_t fc = config.fc_units;
  std::int64_t total = 0;
  total += static_cast<std::int64_t>(config.vocab_size) * config.word_embed_dim;
  total += static_cast<std::int64_t>(preprocess::kNumPosTags) * config.pos_embed_dim;
  total += 2 * gru(config.word_embed_dim, h);
  total += 2 * gru(config.pos_embed_dim + preprocess::kContextFlags, h);
  total += 2 * (fc * 2 * h + fc);
  total += config.num_classes * 2 * fc + config.num_classes;
  if (config.use_char_branch) {
    total += static_cast<std::int64_t>(preprocess::kCharTableRows) * config.char_embed_dim;
    total += static_cast<std::int64_t>(config.word_embed_dim) * config.char_embed_dim;
    total += config.word_embed_dim;
  }
  return total;
}

}  // namespace newsclf::models
