#pragma once

#include <cstdint>
#include <vector>

#include "newsclf/models/config.hpp"
#include "newsclf/nn/params.hpp"
#include "newsclf/nn/tape.hpp"

namespace newsclf::models {

// Fine-tuning head over a precomputed input_steps x input_dim embedding:
// pooled (mean or flatten) into a ReLU dense layer and a softmax.
class DenseHeadModel {
 public:
  using Example = nn::Tensor;

  explicit DenseHeadModel(FineTuneConfig config);

  void init(std::uint64_t seed) { params_.init(seed); }
  const FineTuneConfig& config() const { return config_; }
  nn::ParamSet& params() { return params_; }
  const nn::ParamSet& params() const { return params_; }

  // Throws Error with DimensionMismatch when emb is not input_steps x
  // input_dim.
  int forward(nn::Tape& tape, const Example& emb);
  int loss(nn::Tape& tape, const Example& emb, int label);

 private:
  FineTuneConfig config_;
  nn::ParamSet params_;
  int fc_w_ = -1, fc_b_ = -1;
  int out_w_ = -1, out_b_ = -1;
};

std::int64_t dense_head_param_count(const FineTuneConfig& config);

inline constexpr int kAttentionUnits = 64;

// Fine-tuning head that weighs the sentence vectors with single-query
// additive attention before the dense layer. Zero rows are masked out of the
// attention softmax, covering articles with fewer sentences than rows.
class AttentionHeadModel {
 public:
  using Example = nn::Tensor;

  explicit AttentionHeadModel(FineTuneConfig config);

  void init(std::uint64_t seed) { params_.init(seed); }
  const FineTuneConfig& config() const { return config_; }
  nn::ParamSet& params() { return params_; }
  const nn::ParamSet& params() const { return params_; }

  // alpha_out receives the attention weights when non-null. Throws Error
  // with DimensionMismatch on a shape mismatch and AllMasked when every row
  // is zero.
  int forward(nn::Tape& tape, const Example& emb, std::vector<float>* alpha_out = nullptr);
  int loss(nn::Tape& tape, const Example& emb, int label);

 private:
  FineTuneConfig config_;
  nn::ParamSet params_;
  int attn_w_ = -1, attn_b_ = -1, attn_v_ = -1;
  int fc_w_ = -1, fc_b_ = -1;
  int out_w_ = -1, out_b_ = -1;
};

std::int64_t attention_head_param_count(const FineTuneConfig& config);

}  // namespace newsclf::models
