#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "newsclf/nn/params.hpp"
#include "newsclf/nn/tensor.hpp"

namespace newsclf::nn {

// Node ids of the nine GRU parameter tensors on one tape.
struct GruNodes {
  int w_z, u_z, b_z;
  int w_r, u_r, b_r;
  int w_h, u_h, b_h;
};

// Reverse-mode tape. Build a fresh tape per example, call ops to grow the
// graph, then backward(loss) to fill node gradients and accumulate parameter
// gradients into the bound ParamSet. Strictly single-threaded.
class Tape {
 public:
  explicit Tape(ParamSet* params = nullptr) : params_(params) {}

  // Leaf over an externally owned parameter tensor; one node per parameter.
  int param(int param_index);
  // Leaf owning a constant or input value.
  int input(Tensor value);

  const Tensor& value(int id) const { return val(id); }
  const Tensor& grad(int id) const { return nodes_[static_cast<std::size_t>(id)].grad; }
  // Scalar node value at double precision where the op recorded one
  // (cross_entropy does); falls back to the stored float.
  double scalar_value(int id) const;

  // y = x W^T + b with x of rank 1 (D) or 2 (N x D), W of O x D, b of O.
  int dense(int x, int w, int b);
  int relu(int x);
  // Row softmax, max-shifted; rank 1 or 2.
  int softmax(int x);
  // Mean over rows of -ln p[i, labels[i]]; rank-1 probs take one label.
  int cross_entropy(int probs, const std::vector<int>& labels);
  int embedding_lookup(int table, const std::vector<std::int32_t>& ids);
  int gru_cell(int x, int h_prev, const GruNodes& p);
  // Runs both directions over the rows of xs, skipping mask-0 steps, and
  // concatenates the two final hidden states.
  int bigru(int xs, const std::vector<float>& mask, const GruNodes& fwd, const GruNodes& bwd);
  int concat(const std::vector<int>& parts);
  // Appends constant per-row features to a matrix: N x D -> N x (D + F).
  int append_features(int matrix, const Tensor& features);
  int stack_rows(const std::vector<int>& rows);
  int slice_row(int matrix, int row);
  int mean_rows(int matrix);
  int flatten(int x);
  int scale(int x, float factor);
  // Additive attention with one learned query: scores v . tanh(W e_i + b),
  // masked rows get weight 0. alpha_out receives the weights when non-null.
  int self_attention(int rows, int w, int b, int v, const std::vector<float>* mask = nullptr,
                     std::vector<float>* alpha_out = nullptr);

  // Seeds d(loss)=1, sweeps nodes in reverse creation order, then adds every
  // parameter leaf's gradient into the ParamSet gradient buffers.
  void backward(int loss);

 private:
  struct Node {
    Tensor owned;
    const Tensor* external = nullptr;
    Tensor grad;
    int param_index = -1;
    std::function<void()> back;
  };

  const Tensor& val(int id) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    return n.external ? *n.external : n.owned;
  }
  Tensor& grad_ref(int id) { return nodes_[static_cast<std::size_t>(id)].grad; }
  int push(Tensor value, std::function<void()> back = nullptr);

  std::vector<Node> nodes_;
  std::unordered_map<int, int> param_leaves_;
  std::unordered_map<int, double> exact_scalars_;
  ParamSet* params_;
};

}  // namespace newsclf::nn
