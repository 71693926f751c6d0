#include "newsclf/nn/params.hpp"

#include <cmath>

#include "newsclf/util/rng.hpp"

namespace newsclf::nn {

int ParamSet::add(const std::string& name, std::vector<int> shape) {
  if (index_of(name) >= 0) fail(ErrorCode::ConfigError, "duplicate parameter name " + name);
  Entry entry;
  entry.name = name;
  entry.value = Tensor(shape);
  entry.grad = Tensor(std::move(shape));
  entries_.push_back(std::move(entry));
  return count() - 1;
}

int ParamSet::index_of(const std::string& name) const {
  for (int i = 0; i < count(); ++i)
    if (entries_[static_cast<std::size_t>(i)].name == name) return i;
  return -1;
}

std::int64_t ParamSet::total_values() const {
  std::int64_t total = 0;
  for (const Entry& entry : entries_) total += entry.value.numel();
  return total;
}

void ParamSet::init(std::uint64_t seed) {
  for (int i = 0; i < count(); ++i) {
    Entry& entry = entries_[static_cast<std::size_t>(i)];
    if (entry.value.rank() < 2) {
      std::fill(entry.value.data.begin(), entry.value.data.end(), 0.0f);
      continue;
    }
    const int fan_out = entry.value.dim(0);
    const int fan_in = entry.value.cols();
    const float s = std::sqrt(6.0f / static_cast<float>(fan_in + fan_out));
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i)));
    for (float& v : entry.value.data) v = rng.uniform(-s, s);
  }
}

void ParamSet::zero_grads() {
  for (Entry& entry : entries_)
    std::fill(entry.grad.data.begin(), entry.grad.data.end(), 0.0f);
}

void ParamSet::scale_grads(float factor) {
  for (Entry& entry : entries_)
    for (float& g : entry.grad.data) g *= factor;
}

void ParamSet::mask_frozen_grads() {
  for (Entry& entry : entries_) {
    if (entry.frozen_rows.empty()) continue;
    const int cols = entry.grad.cols();
    const std::size_t rows = std::min(entry.frozen_rows.size(),
                                      static_cast<std::size_t>(entry.grad.rows()));
    for (std::size_t r = 0; r < rows; ++r) {
      if (!entry.frozen_rows[r]) continue;
      for (int c = 0; c < cols; ++c) entry.grad.at(static_cast<int>(r), c) = 0.0f;
    }
  }
}

}  // namespace newsclf::nn
