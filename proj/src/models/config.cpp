#include "newsclf/models/config.hpp"

#include "newsclf/util/error.hpp"

namespace newsclf::models {

const char* architecture_name(Architecture architecture) {
  switch (architecture) {
    case Architecture::RnnPlus:
      return "rnn_plus";
    case Architecture::DenseHead:
      return "dense_head";
    case Architecture::AttentionHead:
      return "attention_head";
  }
  return "";
}

std::optional<Architecture> architecture_from_name(const std::string& name) {
  if (name == "rnn_plus") return Architecture::RnnPlus;
  if (name == "dense_head") return Architecture::DenseHead;
  if (name == "attention_head") return Architecture::AttentionHead;
  return std::nullopt;
}

const char* pooling_name(Pooling pooling) {
  switch (pooling) {
    case Pooling::Mean:
      return "mean";
    case Pooling::Flatten:
      return "flatten";
  }
  return "";
}

std::optional<Pooling> pooling_from_name(const std::string& name) {
  if (name == "mean") return Pooling::Mean;
  if (name == "flatten") return Pooling::Flatten;
  return std::nullopt;
}

namespace {

void require_positive(int value, const char* field) {
  if (value <= 0) fail(ErrorCode::ConfigError, std::string(field) + " must be positive");
}

}  // namespace

void RnnPlusConfig::validate() const {
  require_positive(steps, "steps");
  require_positive(vocab_size, "vocab_size");
  require_positive(word_embed_dim, "word_embed_dim");
  require_positive(pos_embed_dim, "pos_embed_dim");
  require_positive(gru_hidden, "gru_hidden");
  require_positive(fc_units, "fc_units");
  if (num_classes != corpus::kNumClasses)
    fail(ErrorCode::ConfigError, "num_classes must be " + std::to_string(corpus::kNumClasses));
  if (use_char_branch) {
    require_positive(char_embed_dim, "char_embed_dim");
    require_positive(max_chars, "max_chars");
  }
}

void FineTuneConfig::validate() const {
  require_positive(input_steps, "input_steps");
  require_positive(input_dim, "input_dim");
  require_positive(fc_units, "fc_units");
  if (num_classes != corpus::kNumClasses)
    fail(ErrorCode::ConfigError, "num_classes must be " + std::to_string(corpus::kNumClasses));
}

}  // namespace newsclf::models
