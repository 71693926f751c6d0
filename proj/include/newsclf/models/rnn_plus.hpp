#pragma once

#include <array>
#include <cstdint>

#include "newsclf/models/config.hpp"
#include "newsclf/models/pretrained.hpp"
#include "newsclf/nn/params.hpp"
#include "newsclf/nn/tape.hpp"
#include "newsclf/preprocess/encode.hpp"

namespace newsclf::models {

// Dual-branch bidirectional GRU classifier over encoded articles. When the
// char branch is on, word-embedding rows of illegitimate tokens are replaced
// by a dense projection of their mean character embedding.
class RnnPlusModel {
 public:
  using Example = preprocess::EncodedSequence;

  explicit RnnPlusModel(RnnPlusConfig config);

  void init(std::uint64_t seed) { params_.init(seed); }
  const RnnPlusConfig& config() const { return config_; }
  nn::ParamSet& params() { return params_; }
  const nn::ParamSet& params() const { return params_; }

  // Returns the class-probability node. Throws Error with ShapeMismatch when
  // the sequence length disagrees with the config or VocabMismatch when a
  // token id falls outside the embedding table.
  int forward(nn::Tape& tape, const Example& seq);
  int loss(nn::Tape& tape, const Example& seq, int label);

  // Copies the vectors into the word-embedding table; when freeze is set the
  // rows that came from the file stop receiving gradient updates.
  void set_word_vectors(const PretrainedVectors& vectors, bool freeze);

 private:
  struct GruIdx {
    std::array<int, 9> at;
  };

  GruIdx add_gru(const std::string& prefix, int input_dim);
  nn::GruNodes nodes_of(nn::Tape& tape, const GruIdx& idx) const;

  RnnPlusConfig config_;
  nn::ParamSet params_;
  int word_embed_ = -1;
  int pos_embed_ = -1;
  GruIdx word_fwd_{}, word_bwd_{}, ctx_fwd_{}, ctx_bwd_{};
  int word_fc_w_ = -1, word_fc_b_ = -1;
  int ctx_fc_w_ = -1, ctx_fc_b_ = -1;
  int out_w_ = -1, out_b_ = -1;
  int char_embed_ = -1, char_proj_w_ = -1, char_proj_b_ = -1;
};

// Closed-form parameter count for the architecture; matches
// params().total_values() exactly.
std::int64_t rnn_plus_param_count(const RnnPlusConfig& config);

}  // namespace newsclf::models
