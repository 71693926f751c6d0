#include "newsclf/models/predict.hpp"

namespace newsclf::models {

corpus::Label argmax_label(const std::array<float, corpus::kNumClasses>& probabilities) {
  int best = 0;
  for (int k = 1; k < corpus::kNumClasses; ++k)
    if (probabilities[static_cast<std::size_t>(k)] > probabilities[static_cast<std::size_t>(best)])
      best = k;
  return static_cast<corpus::Label>(best);
}

}  // namespace newsclf::models
