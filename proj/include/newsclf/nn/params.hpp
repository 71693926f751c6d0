#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newsclf/nn/tensor.hpp"

namespace newsclf::nn {

// Named parameter tensors in registration order. Each tensor owns a matching
// gradient buffer that tapes accumulate into.
class ParamSet {
 public:
  struct Entry {
    std::string name;
    Tensor value;
    Tensor grad;
    std::vector<std::uint8_t> frozen_rows;  // empty means fully trainable
  };

  int add(const std::string& name, std::vector<int> shape);
  int index_of(const std::string& name) const;  // -1 when absent

  Entry& entry(int index) { return entries_[static_cast<std::size_t>(index)]; }
  const Entry& entry(int index) const { return entries_[static_cast<std::size_t>(index)]; }
  int count() const { return static_cast<int>(entries_.size()); }
  std::int64_t total_values() const;

  // Glorot-uniform for matrices with s = sqrt(6 / (fan_in + fan_out)), zeros
  // for rank-1 tensors; each tensor draws from a seed derived from its
  // registration index so layouts stay reproducible.
  void init(std::uint64_t seed);

  void zero_grads();
  void scale_grads(float factor);
  // Zeroes gradient rows flagged frozen so optimizer steps skip them.
  void mask_frozen_grads();

 private:
  std::vector<Entry> entries_;
};

}  // namespace newsclf::nn
