#pragma once

#include <array>
#include <vector>

#include "newsclf/corpus/article.hpp"
#include "newsclf/nn/tape.hpp"

namespace newsclf::models {

struct Prediction {
  corpus::Label label;
  std::array<float, corpus::kNumClasses> probabilities;
};

// Argmax with ties broken toward the lowest class index.
corpus::Label argmax_label(const std::array<float, corpus::kNumClasses>& probabilities);

template <class Model>
Prediction predict(Model& model, const typename Model::Example& example) {
  nn::Tape tape(&model.params());
  const nn::Tensor& probs = tape.value(model.forward(tape, example));
  Prediction out{};
  for (int k = 0; k < corpus::kNumClasses; ++k)
    out.probabilities[static_cast<std::size_t>(k)] = probs.data[static_cast<std::size_t>(k)];
  out.label = argmax_label(out.probabilities);
  return out;
}

template <class Model>
std::vector<Prediction> predict_batch(Model& model,
                                      const std::vector<typename Model::Example>& examples) {
  std::vector<Prediction> out;
  out.reserve(examples.size());
  for (const auto& example : examples) out.push_back(predict(model, example));
  return out;
}

}  // namespace newsclf::models
