#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "newsclf/util/error.hpp"

namespace newsclf::nn {

// Dense row-major 32-bit float tensor.
struct Tensor {
  std::vector<int> shape;
  std::vector<float> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
    data.assign(static_cast<std::size_t>(numel_of(shape)), 0.0f);
  }

  static std::int64_t numel_of(const std::vector<int>& shape) {
    std::int64_t n = 1;
    for (int d : shape) {
      if (d < 0) fail(ErrorCode::ShapeMismatch, "negative dimension");
      n *= d;
    }
    return n;
  }

  std::int64_t numel() const { return static_cast<std::int64_t>(data.size()); }
  int rank() const { return static_cast<int>(shape.size()); }
  int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }

  // Leading dimension as rows, the rest flattened as columns.
  int rows() const { return rank() == 0 ? 1 : dim(0); }
  int cols() const {
    if (rank() <= 1) return rank() == 0 ? 1 : dim(0);
    int c = 1;
    for (int i = 1; i < rank(); ++i) c *= dim(i);
    return c;
  }

  float& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols() + c]; }
  float at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols() + c]; }

  std::string shape_str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
      if (i > 0) out += "x";
      out += std::to_string(shape[i]);
    }
    return out + "]";
  }
};

inline Tensor tensor_of(std::vector<int> shape, std::vector<float> values) {
  Tensor t(std::move(shape));
  if (static_cast<std::int64_t>(values.size()) != t.numel())
    fail(ErrorCode::ShapeMismatch, "value count does not fill shape " + t.shape_str());
  t.data = std::move(values);
  return t;
}

inline Tensor scalar_tensor(float value) { return tensor_of({}, {value}); }

}  // namespace newsclf::nn
