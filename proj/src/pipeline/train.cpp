#include "newsclf/pipeline/train.hpp"

#include <array>
#include <cmath>
#include <string>

namespace newsclf::pipeline {

const char* optimizer_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::Sgd:
      return "sgd";
    case OptimizerKind::Adam:
      return "adam";
  }
  return "";
}

void TrainConfig::validate() const {
  if (batch_size < 1) fail(ErrorCode::ConfigError, "batch_size must be at least 1");
  if (max_epochs < 1) fail(ErrorCode::ConfigError, "max_epochs must be at least 1");
  if (learning_rate < 0.0f || !std::isfinite(learning_rate))
    fail(ErrorCode::ConfigError, "learning_rate must be nonnegative");
  if (early_stop_patience < 0) fail(ErrorCode::ConfigError, "patience must be nonnegative");
  if (beta1 < 0.0f || beta1 >= 1.0f || beta2 < 0.0f || beta2 >= 1.0f)
    fail(ErrorCode::ConfigError, "adam betas must lie in [0, 1)");
  if (epsilon <= 0.0f) fail(ErrorCode::ConfigError, "adam epsilon must be positive");
}

AdamState make_adam_state(const nn::ParamSet& params) {
  AdamState state;
  state.m.reserve(static_cast<std::size_t>(params.count()));
  state.v.reserve(static_cast<std::size_t>(params.count()));
  for (int i = 0; i < params.count(); ++i) {
    state.m.emplace_back(params.entry(i).value.shape);
    state.v.emplace_back(params.entry(i).value.shape);
  }
  return state;
}

void adam_step(nn::ParamSet& params, AdamState& state, const TrainConfig& config) {
  if (static_cast<int>(state.m.size()) != params.count() ||
      static_cast<int>(state.v.size()) != params.count())
    fail(ErrorCode::ShapeMismatch, "adam state does not match param set");
  ++state.step;
  const double correction1 = 1.0 - std::pow(static_cast<double>(config.beta1), state.step);
  const double correction2 = 1.0 - std::pow(static_cast<double>(config.beta2), state.step);
  for (int i = 0; i < params.count(); ++i) {
    nn::ParamSet::Entry& entry = params.entry(i);
    nn::Tensor& m = state.m[static_cast<std::size_t>(i)];
    nn::Tensor& v = state.v[static_cast<std::size_t>(i)];
    if (m.shape != entry.value.shape)
      fail(ErrorCode::ShapeMismatch, "adam state shape differs for " + entry.name);
    for (std::size_t k = 0; k < entry.value.data.size(); ++k) {
      const float g = entry.grad.data[k];
      m.data[k] = config.beta1 * m.data[k] + (1.0f - config.beta1) * g;
      v.data[k] = config.beta2 * v.data[k] + (1.0f - config.beta2) * g * g;
      const double m_hat = static_cast<double>(m.data[k]) / correction1;
      const double v_hat = static_cast<double>(v.data[k]) / correction2;
      entry.value.data[k] -= static_cast<float>(
          static_cast<double>(config.learning_rate) * m_hat /
          (std::sqrt(v_hat) + static_cast<double>(config.epsilon)));
    }
  }
}

void sgd_step(nn::ParamSet& params, const TrainConfig& config) {
  for (int i = 0; i < params.count(); ++i) {
    nn::ParamSet::Entry& entry = params.entry(i);
    for (std::size_t k = 0; k < entry.value.data.size(); ++k)
      entry.value.data[k] -= config.learning_rate * entry.grad.data[k];
  }
}

std::vector<float> class_weight_vector(const std::vector<int>& labels) {
  std::array<std::size_t, corpus::kNumClasses> counts{};
  for (int y : labels) {
    if (y < 0 || y >= corpus::kNumClasses)
      fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(y));
    ++counts[static_cast<std::size_t>(y)];
  }
  std::vector<float> weights(corpus::kNumClasses, 1.0f);
  for (int k = 0; k < corpus::kNumClasses; ++k) {
    const std::size_t c = counts[static_cast<std::size_t>(k)];
    if (c > 0)
      weights[static_cast<std::size_t>(k)] =
          static_cast<float>(labels.size()) /
          (static_cast<float>(corpus::kNumClasses) * static_cast<float>(c));
  }
  return weights;
}

std::vector<nn::Tensor> snapshot_params(const nn::ParamSet& params) {
  std::vector<nn::Tensor> snapshot;
  snapshot.reserve(static_cast<std::size_t>(params.count()));
  for (int i = 0; i < params.count(); ++i) snapshot.push_back(params.entry(i).value);
  return snapshot;
}

void restore_params(nn::ParamSet& params, const std::vector<nn::Tensor>& snapshot) {
  if (static_cast<int>(snapshot.size()) != params.count())
    fail(ErrorCode::ShapeMismatch, "snapshot does not match param set");
  for (int i = 0; i < params.count(); ++i)
    params.entry(i).value = snapshot[static_cast<std::size_t>(i)];
}

}  // namespace newsclf::pipeline
