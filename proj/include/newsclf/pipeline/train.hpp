#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "newsclf/corpus/article.hpp"
#include "newsclf/nn/params.hpp"
#include "newsclf/nn/tape.hpp"
#include "newsclf/nn/tensor.hpp"
#include "newsclf/util/error.hpp"
#include "newsclf/util/rng.hpp"

namespace newsclf::pipeline {

enum class OptimizerKind {
  Sgd,
  Adam,
};

const char* optimizer_name(OptimizerKind kind);

struct TrainConfig {
  int batch_size = 32;
  int max_epochs = 50;
  float learning_rate = 1e-3f;
  OptimizerKind optimizer = OptimizerKind::Adam;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float epsilon = 1e-8f;
  int early_stop_patience = 5;
  std::uint64_t seed = 1;
  bool shuffle = true;
  bool class_weights = false;

  // Throws Error with ConfigError on out-of-range fields.
  void validate() const;
};

struct TrainHistory {
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  std::vector<double> val_accuracy;
  int best_epoch = -1;  // index into the per-epoch vectors
};

// First and second moment buffers, one tensor pair per parameter entry.
struct AdamState {
  std::vector<nn::Tensor> m;
  std::vector<nn::Tensor> v;
  long long step = 0;
};

AdamState make_adam_state(const nn::ParamSet& params);

// Standard bias-corrected update from the gradients held in params. Throws
// Error with ShapeMismatch when the state does not match the param set.
void adam_step(nn::ParamSet& params, AdamState& state, const TrainConfig& config);
void sgd_step(nn::ParamSet& params, const TrainConfig& config);

// Inverse-frequency weights n/(k*n_c) per class; classes without examples
// get weight 1.
std::vector<float> class_weight_vector(const std::vector<int>& labels);

std::vector<nn::Tensor> snapshot_params(const nn::ParamSet& params);
void restore_params(nn::ParamSet& params, const std::vector<nn::Tensor>& snapshot);

// Mini-batch training with per-epoch seeded shuffling and early stopping on
// validation loss. Gradients are averaged over each batch; the model is left
// holding the parameters of the best epoch. Deterministic for a fixed seed.
//
// Throws Error with EmptyDataset (either set empty), ConfigError (length
// mismatch or bad config) or DivergedLoss (non-finite loss).
template <class Model>
TrainHistory train(Model& model, const std::vector<typename Model::Example>& train_x,
                   const std::vector<int>& train_y,
                   const std::vector<typename Model::Example>& val_x,
                   const std::vector<int>& val_y, const TrainConfig& config) {
  config.validate();
  if (train_x.empty() || val_x.empty()) fail(ErrorCode::EmptyDataset, "empty training split");
  if (train_x.size() != train_y.size() || val_x.size() != val_y.size())
    fail(ErrorCode::ConfigError, "example and label counts differ");

  nn::ParamSet& params = model.params();
  AdamState state;
  if (config.optimizer == OptimizerKind::Adam) state = make_adam_state(params);
  std::vector<float> weights;
  if (config.class_weights) weights = class_weight_vector(train_y);

  TrainHistory history;
  std::vector<nn::Tensor> best = snapshot_params(params);
  double best_val = std::numeric_limits<double>::infinity();
  int bad_epochs = 0;

  const std::size_t n = train_x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (config.shuffle) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      Rng rng(Rng::derive(config.seed, static_cast<std::uint64_t>(epoch)));
      rng.shuffle(order);
    }

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t stop = std::min(n, start + static_cast<std::size_t>(config.batch_size));
      params.zero_grads();
      double batch_loss = 0.0;
      for (std::size_t b = start; b < stop; ++b) {
        const std::size_t idx = order[b];
        nn::Tape tape(&params);
        int loss = model.loss(tape, train_x[idx], train_y[idx]);
        if (config.class_weights)
          loss = tape.scale(loss, weights[static_cast<std::size_t>(train_y[idx])]);
        batch_loss += tape.scalar_value(loss);
        tape.backward(loss);
      }
      if (!std::isfinite(batch_loss)) fail(ErrorCode::DivergedLoss, "training loss diverged");
      epoch_loss += batch_loss;
      params.scale_grads(1.0f / static_cast<float>(stop - start));
      params.mask_frozen_grads();
      if (config.optimizer == OptimizerKind::Adam)
        adam_step(params, state, config);
      else
        sgd_step(params, config);
    }
    history.train_loss.push_back(epoch_loss / static_cast<double>(n));

    double val_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < val_x.size(); ++i) {
      nn::Tape tape(&params);
      int probs = model.forward(tape, val_x[i]);
      int loss = tape.cross_entropy(probs, {val_y[i]});
      val_sum += tape.scalar_value(loss);
      const nn::Tensor& p = tape.value(probs);
      int arg = 0;
      for (int k = 1; k < corpus::kNumClasses; ++k)
        if (p.data[static_cast<std::size_t>(k)] > p.data[static_cast<std::size_t>(arg)]) arg = k;
      if (arg == val_y[i]) ++correct;
    }
    if (!std::isfinite(val_sum)) fail(ErrorCode::DivergedLoss, "validation loss diverged");
    const double val_loss = val_sum / static_cast<double>(val_x.size());
    history.val_loss.push_back(val_loss);
    history.val_accuracy.push_back(static_cast<double>(correct) /
                                   static_cast<double>(val_x.size()));

    if (val_loss < best_val) {
      best_val = val_loss;
      history.best_epoch = epoch - 1;
      best = snapshot_params(params);
      bad_epochs = 0;
    } else {
      ++bad_epochs;
      if (bad_epochs > config.early_stop_patience) break;
    }
  }

  restore_params(params, best);
  return history;
}

}  // namespace newsclf::pipeline
