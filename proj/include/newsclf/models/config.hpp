#pragma once

#include <optional>
#include <string>

#include "newsclf/corpus/article.hpp"
#include "newsclf/preprocess/encode.hpp"

namespace newsclf::models {

enum class Architecture {
  RnnPlus,
  DenseHead,
  AttentionHead,
};

const char* architecture_name(Architecture architecture);
std::optional<Architecture> architecture_from_name(const std::string& name);

// Dual-branch recurrent classifier: word-token embeddings through one
// bidirectional GRU, POS embeddings plus context flags through another, both
// final states through per-branch ReLU dense layers, merged into a softmax.
struct RnnPlusConfig {
  int steps = preprocess::kDefaultSteps;
  int vocab_size = 0;
  int word_embed_dim = 100;
  int pos_embed_dim = 16;
  int gru_hidden = 64;
  int fc_units = 30;
  int num_classes = corpus::kNumClasses;
  bool use_char_branch = false;
  int char_embed_dim = 16;
  int max_chars = 12;

  // Throws Error with ConfigError when a dimension is not positive or
  // num_classes is not 3.
  void validate() const;
};

enum class Pooling {
  Mean,
  Flatten,
};

const char* pooling_name(Pooling pooling);
std::optional<Pooling> pooling_from_name(const std::string& name);

// Fine-tuning head over precomputed article embeddings of shape
// input_steps x input_dim.
struct FineTuneConfig {
  int input_steps = 1;
  int input_dim = 512;
  int fc_units = 32;
  int num_classes = corpus::kNumClasses;
  Pooling pooling = Pooling::Mean;

  void validate() const;
};

}  // namespace newsclf::models
