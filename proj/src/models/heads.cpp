#include "newsclf/models/heads.hpp"

#include <string>

#include "newsclf/util/error.hpp"

namespace newsclf::models {

namespace {

void check_input(const nn::Tensor& emb, const FineTuneConfig& config) {
  const std::vector<int> expected = {config.input_steps, config.input_dim};
  if (emb.shape != expected)
    fail(ErrorCode::DimensionMismatch, "input is " + emb.shape_str() + ", head expects " +
                                           std::to_string(config.input_steps) + "x" +
                                           std::to_string(config.input_dim));
}

}  // namespace

DenseHeadModel::DenseHeadModel(FineTuneConfig config) : config_(config) {
  config_.validate();
  const int in = config_.pooling == Pooling::Flatten ? config_.input_steps * config_.input_dim
                                                     : config_.input_dim;
  fc_w_ = params_.add("fc.w", {config_.fc_units, in});
  fc_b_ = params_.add("fc.b", {config_.fc_units});
  out_w_ = params_.add("out.w", {config_.num_classes, config_.fc_units});
  out_b_ = params_.add("out.b", {config_.num_classes});
}

int DenseHeadModel::forward(nn::Tape& tape, const Example& emb) {
  check_input(emb, config_);
  int x = tape.input(emb);
  int pooled = config_.pooling == Pooling::Flatten ? tape.flatten(x) : tape.mean_rows(x);
  int hidden = tape.relu(tape.dense(pooled, tape.param(fc_w_), tape.param(fc_b_)));
  return tape.softmax(tape.dense(hidden, tape.param(out_w_), tape.param(out_b_)));
}

int DenseHeadModel::loss(nn::Tape& tape, const Example& emb, int label) {
  return tape.cross_entropy(forward(tape, emb), {label});
}

std::int64_t dense_head_param_count(const FineTuneConfig& config) {
  const std::int64_t in = config.pooling == Pooling::Flatten
                              ? static_cast<std::int64_t>(config.input_steps) * config.input_dim
                              : config.input_dim;
  const std::int64_t fc = config.fc_units;
  return fc * in + fc + config.num_classes * fc + config.num_classes;
}

AttentionHeadModel::AttentionHeadModel(FineTuneConfig config) : config_(config) {
  config_.validate();
  attn_w_ = params_.add("attn.w", {kAttentionUnits, config_.input_dim});
  attn_b_ = params_.add("attn.b", {kAttentionUnits});
  attn_v_ = params_.add("attn.v", {kAttentionUnits});
  fc_w_ = params_.add("fc.w", {config_.fc_units, config_.input_dim});
  fc_b_ = params_.add("fc.b", {config_.fc_units});
  out_w_ = params_.add("out.w", {config_.num_classes, config_.fc_units});
  out_b_ = params_.add("out.b", {config_.num_classes});
}

int AttentionHeadModel::forward(nn::Tape& tape, const Example& emb,
                                std::vector<float>* alpha_out) {
  check_input(emb, config_);
  std::vector<float> mask(static_cast<std::size_t>(config_.input_steps), 0.0f);
  for (int r = 0; r < config_.input_steps; ++r)
    for (int c = 0; c < config_.input_dim; ++c)
      if (emb.at(r, c) != 0.0f) {
        mask[static_cast<std::size_t>(r)] = 1.0f;
        break;
      }
  int x = tape.input(emb);
  int attended = tape.self_attention(x, tape.param(attn_w_), tape.param(attn_b_),
                                     tape.param(attn_v_), &mask, alpha_out);
  int hidden = tape.relu(tape.dense(attended, tape.param(fc_w_), tape.param(fc_b_)));
  return tape.softmax(tape.dense(hidden, tape.param(out_w_), tape.param(out_b_)));
}

int AttentionHeadModel::loss(nn::Tape& tape, const Example& emb, int label) {
  return tape.cross_entropy(forward(tape, emb), {label});
}

std::int64_t attention_head_param_count(const FineTuneConfig& config) {
  const std::int64_t a = kAttentionUnits;
  const std::int64_t fc = config.fc_units;
  return a * config.input_dim + a + a + fc * config.input_dim + fc + config.num_classes * fc +
         config.num_classes;
}

}  // namespace newsclf::models
