#include "newsclf/nn/tape.hpp"

#include <cmath>

namespace newsclf::nn {

namespace {

float sigmoid(float x) { return 1.0f / (1.0f + std::exp(-x)); }

// y += M a for M of O x D, a of D.
void matvec_acc(const Tensor& m, const float* a, float* y) {
  const int o_dim = m.dim(0);
  const int d_dim = m.dim(1);
  for (int o = 0; o < o_dim; ++o) {
    const float* row = m.data.data() + static_cast<std::size_t>(o) * d_dim;
    float sum = 0.0f;
    for (int d = 0; d < d_dim; ++d) sum += row[d] * a[d];
    y[o] += sum;
  }
}

// y += M^T a for M of O x D, a of O.
void matvec_transpose_acc(const Tensor& m, const float* a, float* y) {
  const int o_dim = m.dim(0);
  const int d_dim = m.dim(1);
  for (int o = 0; o < o_dim; ++o) {
    const float* row = m.data.data() + static_cast<std::size_t>(o) * d_dim;
    const float a_o = a[o];
    if (a_o == 0.0f) continue;
    for (int d = 0; d < d_dim; ++d) y[d] += row[d] * a_o;
  }
}

// dM[o, d] += a[o] * x[d].
void outer_acc(Tensor& dm, const float* a, const float* x) {
  const int o_dim = dm.dim(0);
  const int d_dim = dm.dim(1);
  for (int o = 0; o < o_dim; ++o) {
    float* row = dm.data.data() + static_cast<std::size_t>(o) * d_dim;
    const float a_o = a[o];
    if (a_o == 0.0f) continue;
    for (int d = 0; d < d_dim; ++d) row[d] += a_o * x[d];
  }
}

void check_matrix(const Tensor& t, int rows, int cols, const char* what) {
  if (t.rank() != 2 || t.dim(0) != rows || t.dim(1) != cols)
    fail(ErrorCode::ShapeMismatch, std::string(what) + " expected [" + std::to_string(rows) +
                                       "x" + std::to_string(cols) + "], got " + t.shape_str());
}

void check_vector(const Tensor& t, int len, const char* what) {
  if (t.rank() != 1 || t.dim(0) != len)
    fail(ErrorCode::ShapeMismatch, std::string(what) + " expected [" + std::to_string(len) +
                                       "], got " + t.shape_str());
}

}  // namespace

int Tape::push(Tensor value, std::function<void()> back) {
  Node node;
  node.grad = Tensor(value.shape);
  node.owned = std::move(value);
  node.back = std::move(back);
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

int Tape::param(int param_index) {
  auto it = param_leaves_.find(param_index);
  if (it != param_leaves_.end()) return it->second;
  if (params_ == nullptr) fail(ErrorCode::ConfigError, "tape has no bound ParamSet");
  const Tensor& value = params_->entry(param_index).value;
  Node node;
  node.external = &value;
  node.grad = Tensor(value.shape);
  node.param_index = param_index;
  nodes_.push_back(std::move(node));
  const int id = static_cast<int>(nodes_.size()) - 1;
  param_leaves_.emplace(param_index, id);
  return id;
}

int Tape::input(Tensor value) { return push(std::move(value)); }

double Tape::scalar_value(int id) const {
  auto it = exact_scalars_.find(id);
  if (it != exact_scalars_.end()) return it->second;
  const Tensor& v = val(id);
  if (v.numel() != 1) fail(ErrorCode::ShapeMismatch, "scalar_value on " + v.shape_str());
  return static_cast<double>(v.data[0]);
}

int Tape::dense(int x, int w, int b) {
  const Tensor& xv = val(x);
  const Tensor& wv = val(w);
  const Tensor& bv = val(b);
  if (wv.rank() != 2) fail(ErrorCode::ShapeMismatch, "dense weights must be rank 2");
  const int out_dim = wv.dim(0);
  const int in_dim = wv.dim(1);
  check_vector(bv, out_dim, "dense bias");
  const bool batched = xv.rank() == 2;
  if (!batched && xv.rank() != 1) fail(ErrorCode::ShapeMismatch, "dense input rank");
  const int n = batched ? xv.dim(0) : 1;
  if ((batched ? xv.dim(1) : xv.dim(0)) != in_dim)
    fail(ErrorCode::ShapeMismatch,
         "dense input " + xv.shape_str() + " vs weights " + wv.shape_str());

  Tensor y(batched ? std::vector<int>{n, out_dim} : std::vector<int>{out_dim});
  for (int i = 0; i < n; ++i) {
    const float* xi = xv.data.data() + static_cast<std::size_t>(i) * in_dim;
    float* yi = y.data.data() + static_cast<std::size_t>(i) * out_dim;
    for (int o = 0; o < out_dim; ++o) yi[o] = bv.data[static_cast<std::size_t>(o)];
    matvec_acc(wv, xi, yi);
  }
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, x, w, b, n, in_dim, out_dim] {
    const Tensor& g = grad(id);
    const Tensor& xv2 = val(x);
    const Tensor& wv2 = val(w);
    Tensor& dx = grad_ref(x);
    Tensor& dw = grad_ref(w);
    Tensor& db = grad_ref(b);
    for (int i = 0; i < n; ++i) {
      const float* gi = g.data.data() + static_cast<std::size_t>(i) * out_dim;
      const float* xi = xv2.data.data() + static_cast<std::size_t>(i) * in_dim;
      float* dxi = dx.data.data() + static_cast<std::size_t>(i) * in_dim;
      matvec_transpose_acc(wv2, gi, dxi);
      outer_acc(dw, gi, xi);
      for (int o = 0; o < out_dim; ++o) db.data[static_cast<std::size_t>(o)] += gi[o];
    }
  };
  return id;
}

int Tape::relu(int x) {
  const Tensor& xv = val(x);
  Tensor y(xv.shape);
  for (std::size_t i = 0; i < xv.data.size(); ++i)
    y.data[i] = xv.data[i] > 0.0f ? xv.data[i] : 0.0f;
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, x] {
    const Tensor& g = grad(id);
    const Tensor& xv2 = val(x);
    Tensor& dx = grad_ref(x);
    for (std::size_t i = 0; i < g.data.size(); ++i)
      if (xv2.data[i] > 0.0f) dx.data[i] += g.data[i];
  };
  return id;
}

int Tape::softmax(int x) {
  const Tensor& xv = val(x);
  if (xv.rank() != 1 && xv.rank() != 2)
    fail(ErrorCode::ShapeMismatch, "softmax input rank must be 1 or 2");
  const int n = xv.rank() == 2 ? xv.dim(0) : 1;
  const int c = xv.rank() == 2 ? xv.dim(1) : xv.dim(0);
  if (c == 0) fail(ErrorCode::ShapeMismatch, "softmax over empty axis");
  Tensor y(xv.shape);
  for (int i = 0; i < n; ++i) {
    const float* xi = xv.data.data() + static_cast<std::size_t>(i) * c;
    float* yi = y.data.data() + static_cast<std::size_t>(i) * c;
    float max_x = xi[0];
    for (int j = 1; j < c; ++j) max_x = std::max(max_x, xi[j]);
    double denom = 0.0;
    for (int j = 0; j < c; ++j) {
      yi[j] = std::exp(xi[j] - max_x);
      denom += yi[j];
    }
    for (int j = 0; j < c; ++j) yi[j] = static_cast<float>(yi[j] / denom);
  }
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, x, n, c] {
    const Tensor& g = grad(id);
    const Tensor& yv = value(id);
    Tensor& dx = grad_ref(x);
    for (int i = 0; i < n; ++i) {
      const float* gi = g.data.data() + static_cast<std::size_t>(i) * c;
      const float* yi = yv.data.data() + static_cast<std::size_t>(i) * c;
      float* dxi = dx.data.data() + static_cast<std::size_t>(i) * c;
      double dot = 0.0;
      for (int j = 0; j < c; ++j) dot += static_cast<double>(gi[j]) * yi[j];
      for (int j = 0; j < c; ++j)
        dxi[j] += yi[j] * (gi[j] - static_cast<float>(dot));
    }
  };
  return id;
}

int Tape::cross_entropy(int probs, const std::vector<int>& labels) {
  const Tensor& pv = val(probs);
  if (pv.rank() != 1 && pv.rank() != 2)
    fail(ErrorCode::ShapeMismatch, "cross_entropy input rank must be 1 or 2");
  const int n = pv.rank() == 2 ? pv.dim(0) : 1;
  const int c = pv.rank() == 2 ? pv.dim(1) : pv.dim(0);
  if (static_cast<int>(labels.size()) != n)
    fail(ErrorCode::ShapeMismatch, std::to_string(labels.size()) + " labels for " +
                                       std::to_string(n) + " rows");
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int label = labels[static_cast<std::size_t>(i)];
    if (label < 0 || label >= c)
      fail(ErrorCode::LabelOutOfRange,
           "label " + std::to_string(label) + " outside [0, " + std::to_string(c) + ")");
    const float p = pv.data[static_cast<std::size_t>(i) * c + label];
    if (!(p > 0.0f) || !std::isfinite(p))
      fail(ErrorCode::NonFiniteValue, "probability " + std::to_string(p) + " for label " +
                                          std::to_string(label));
    total += -std::log(static_cast<double>(p));
  }
  const int id = push(scalar_tensor(static_cast<float>(total / n)));
  exact_scalars_[id] = total / n;
  nodes_.back().back = [this, id, probs, labels, n, c] {
    const float g = grad(id).data[0];
    const Tensor& pv2 = val(probs);
    Tensor& dp = grad_ref(probs);
    for (int i = 0; i < n; ++i) {
      const int label = labels[static_cast<std::size_t>(i)];
      const std::size_t k = static_cast<std::size_t>(i) * c + label;
      dp.data[k] += g * (-1.0f / (static_cast<float>(n) * pv2.data[k]));
    }
  };
  return id;
}

int Tape::embedding_lookup(int table, const std::vector<std::int32_t>& ids) {
  const Tensor& tv = val(table);
  if (tv.rank() != 2) fail(ErrorCode::ShapeMismatch, "embedding table must be rank 2");
  const int v_dim = tv.dim(0);
  const int e_dim = tv.dim(1);
  Tensor y({static_cast<int>(ids.size()), e_dim});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::int32_t row = ids[i];
    if (row < 0 || row >= v_dim)
      fail(ErrorCode::IdOutOfRange,
           "id " + std::to_string(row) + " outside [0, " + std::to_string(v_dim) + ")");
    const float* src = tv.data.data() + static_cast<std::size_t>(row) * e_dim;
    std::copy(src, src + e_dim, y.data.data() + i * e_dim);
  }
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, table, ids, e_dim] {
    const Tensor& g = grad(id);
    Tensor& dt = grad_ref(table);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      float* dst = dt.data.data() + static_cast<std::size_t>(ids[i]) * e_dim;
      const float* src = g.data.data() + i * e_dim;
      for (int e = 0; e < e_dim; ++e) dst[e] += src[e];
    }
  };
  return id;
}

int Tape::gru_cell(int x, int h_prev, const GruNodes& p) {
  const Tensor& xv = val(x);
  const Tensor& hv = val(h_prev);
  if (xv.rank() != 1 || hv.rank() != 1)
    fail(ErrorCode::ShapeMismatch, "gru_cell expects rank-1 x and h");
  const int d_dim = xv.dim(0);
  const int h_dim = hv.dim(0);
  check_matrix(val(p.w_z), h_dim, d_dim, "W_z");
  check_matrix(val(p.w_r), h_dim, d_dim, "W_r");
  check_matrix(val(p.w_h), h_dim, d_dim, "W_h");
  check_matrix(val(p.u_z), h_dim, h_dim, "U_z");
  check_matrix(val(p.u_r), h_dim, h_dim, "U_r");
  check_matrix(val(p.u_h), h_dim, h_dim, "U_h");
  check_vector(val(p.b_z), h_dim, "b_z");
  check_vector(val(p.b_r), h_dim, "b_r");
  check_vector(val(p.b_h), h_dim, "b_h");

  Tensor z({h_dim});
  Tensor r({h_dim});
  Tensor rh({h_dim});
  Tensor c({h_dim});
  Tensor h_new({h_dim});
  std::copy(val(p.b_z).data.begin(), val(p.b_z).data.end(), z.data.begin());
  matvec_acc(val(p.w_z), xv.data.data(), z.data.data());
  matvec_acc(val(p.u_z), hv.data.data(), z.data.data());
  std::copy(val(p.b_r).data.begin(), val(p.b_r).data.end(), r.data.begin());
  matvec_acc(val(p.w_r), xv.data.data(), r.data.data());
  matvec_acc(val(p.u_r), hv.data.data(), r.data.data());
  for (int k = 0; k < h_dim; ++k) {
    z.data[static_cast<std::size_t>(k)] = sigmoid(z.data[static_cast<std::size_t>(k)]);
    r.data[static_cast<std::size_t>(k)] = sigmoid(r.data[static_cast<std::size_t>(k)]);
    rh.data[static_cast<std::size_t>(k)] =
        r.data[static_cast<std::size_t>(k)] * hv.data[static_cast<std::size_t>(k)];
  }
  std::copy(val(p.b_h).data.begin(), val(p.b_h).data.end(), c.data.begin());
  matvec_acc(val(p.w_h), xv.data.data(), c.data.data());
  matvec_acc(val(p.u_h), rh.data.data(), c.data.data());
  for (int k = 0; k < h_dim; ++k) {
    c.data[static_cast<std::size_t>(k)] = std::tanh(c.data[static_cast<std::size_t>(k)]);
    h_new.data[static_cast<std::size_t>(k)] =
        (1.0f - z.data[static_cast<std::size_t>(k)]) * hv.data[static_cast<std::size_t>(k)] +
        z.data[static_cast<std::size_t>(k)] * c.data[static_cast<std::size_t>(k)];
  }

  const int id = push(std::move(h_new));
  nodes_.back().back = [this, id, x, h_prev, p, z, r, rh, c, d_dim, h_dim] {
    const Tensor& g = grad(id);
    const Tensor& xv2 = val(x);
    const Tensor& hv2 = val(h_prev);
    Tensor dz({h_dim}), dr({h_dim}), drh({h_dim}), da_c({h_dim}), da_z({h_dim}), da_r({h_dim});
    Tensor& dx = grad_ref(x);
    Tensor& dh = grad_ref(h_prev);

    for (int k = 0; k < h_dim; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      const float gk = g.data[i];
      dz.data[i] = gk * (c.data[i] - hv2.data[i]);
      const float dc = gk * z.data[i];
      dh.data[i] += gk * (1.0f - z.data[i]);
      da_c.data[i] = dc * (1.0f - c.data[i] * c.data[i]);
    }
    outer_acc(grad_ref(p.w_h), da_c.data.data(), xv2.data.data());
    outer_acc(grad_ref(p.u_h), da_c.data.data(), rh.data.data());
    matvec_transpose_acc(val(p.w_h), da_c.data.data(), dx.data.data());
    matvec_transpose_acc(val(p.u_h), da_c.data.data(), drh.data.data());
    for (int k = 0; k < h_dim; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      grad_ref(p.b_h).data[i] += da_c.data[i];
      dr.data[i] = drh.data[i] * hv2.data[i];
      dh.data[i] += drh.data[i] * r.data[i];
      da_z.data[i] = dz.data[i] * z.data[i] * (1.0f - z.data[i]);
      da_r.data[i] = dr.data[i] * r.data[i] * (1.0f - r.data[i]);
    }
    outer_acc(grad_ref(p.w_z), da_z.data.data(), xv2.data.data());
    outer_acc(grad_ref(p.u_z), da_z.data.data(), hv2.data.data());
    outer_acc(grad_ref(p.w_r), da_r.data.data(), xv2.data.data());
    outer_acc(grad_ref(p.u_r), da_r.data.data(), hv2.data.data());
    matvec_transpose_acc(val(p.w_z), da_z.data.data(), dx.data.data());
    matvec_transpose_acc(val(p.u_z), da_z.data.data(), dh.data.data());
    matvec_transpose_acc(val(p.w_r), da_r.data.data(), dx.data.data());
    matvec_transpose_acc(val(p.u_r), da_r.data.data(), dh.data.data());
    for (int k = 0; k < h_dim; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      grad_ref(p.b_z).data[i] += da_z.data[i];
      grad_ref(p.b_r).data[i] += da_r.data[i];
    }
    (void)d_dim;
  };
  return id;
}

int Tape::bigru(int xs, const std::vector<float>& mask, const GruNodes& fwd,
                const GruNodes& bwd) {
  const Tensor& x = val(xs);
  if (x.rank() != 2) fail(ErrorCode::ShapeMismatch, "bigru input must be rank 2");
  const int steps = x.dim(0);
  if (static_cast<int>(mask.size()) != steps)
    fail(ErrorCode::ShapeMismatch, std::to_string(mask.size()) + " mask entries for " +
                                       std::to_string(steps) + " steps");
  bool any = false;
  for (float m : mask) any = any || m != 0.0f;
  if (!any) fail(ErrorCode::AllMasked, "every step is masked out");

  const int h_dim = val(fwd.b_z).dim(0);
  int h_f = input(Tensor({h_dim}));
  for (int t = 0; t < steps; ++t) {
    if (mask[static_cast<std::size_t>(t)] == 0.0f) continue;
    h_f = gru_cell(slice_row(xs, t), h_f, fwd);
  }
  int h_b = input(Tensor({h_dim}));
  for (int t = steps - 1; t >= 0; --t) {
    if (mask[static_cast<std::size_t>(t)] == 0.0f) continue;
    h_b = gru_cell(slice_row(xs, t), h_b, bwd);
  }
  return concat({h_f, h_b});
}

int Tape::concat(const std::vector<int>& parts) {
  if (parts.empty()) fail(ErrorCode::ShapeMismatch, "concat of zero parts");
  int total = 0;
  for (int part : parts) {
    const Tensor& pv = val(part);
    if (pv.rank() != 1) fail(ErrorCode::ShapeMismatch, "concat expects rank-1 parts");
    total += pv.dim(0);
  }
  Tensor y({total});
  int offset = 0;
  for (int part : parts) {
    const Tensor& pv = val(part);
    std::copy(pv.data.begin(), pv.data.end(), y.data.begin() + offset);
    offset += pv.dim(0);
  }
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, parts] {
    const Tensor& g = grad(id);
    int offset2 = 0;
    for (int part : parts) {
      Tensor& dp = grad_ref(part);
      for (std::size_t k = 0; k < dp.data.size(); ++k)
        dp.data[k] += g.data[static_cast<std::size_t>(offset2) + k];
      offset2 += static_cast<int>(dp.data.size());
    }
  };
  return id;
}

int Tape::append_features(int matrix, const Tensor& features) {
  const Tensor& xv = val(matrix);
  if (xv.rank() != 2 || features.rank() != 2 || features.dim(0) != xv.dim(0))
    fail(ErrorCode::ShapeMismatch, "append_features needs matching row counts, got " +
                                       xv.shape_str() + " and " + features.shape_str());
  const int n = xv.dim(0);
  const int d = xv.dim(1);
  const int f = features.dim(1);
  Tensor y({n, d + f});
  for (int i = 0; i < n; ++i) {
    std::copy(xv.data.begin() + static_cast<std::size_t>(i) * d,
              xv.data.begin() + static_cast<std::size_t>(i + 1) * d,
              y.data.begin() + static_cast<std::size_t>(i) * (d + f));
    std::copy(features.data.begin() + static_cast<std::size_t>(i) * f,
              features.data.begin() + static_cast<std::size_t>(i + 1) * f,
              y.data.begin() + static_cast<std::size_t>(i) * (d + f) + d);
  }
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, matrix, n, d, f] {
    const Tensor& g = grad(id);
    Tensor& dx = grad_ref(matrix);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < d; ++k)
        dx.data[static_cast<std::size_t>(i) * d + k] +=
            g.data[static_cast<std::size_t>(i) * (d + f) + k];
  };
  return id;
}

int Tape::stack_rows(const std::vector<int>& rows) {
  if (rows.empty()) fail(ErrorCode::ShapeMismatch, "stack of zero rows");
  const int e_dim = val(rows[0]).dim(0);
  for (int row : rows) check_vector(val(row), e_dim, "stacked row");
  Tensor y({static_cast<int>(rows.size()), e_dim});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Tensor& rv = val(rows[i]);
    std::copy(rv.data.begin(), rv.data.end(), y.data.begin() + i * e_dim);
  }
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, rows, e_dim] {
    const Tensor& g = grad(id);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Tensor& dr = grad_ref(rows[i]);
      for (int k = 0; k < e_dim; ++k)
        dr.data[static_cast<std::size_t>(k)] += g.data[i * e_dim + k];
    }
  };
  return id;
}

int Tape::slice_row(int matrix, int row) {
  const Tensor& xv = val(matrix);
  if (xv.rank() != 2) fail(ErrorCode::ShapeMismatch, "slice_row needs rank 2");
  if (row < 0 || row >= xv.dim(0))
    fail(ErrorCode::ShapeMismatch, "row " + std::to_string(row) + " outside " + xv.shape_str());
  const int e_dim = xv.dim(1);
  Tensor y({e_dim});
  std::copy(xv.data.begin() + static_cast<std::size_t>(row) * e_dim,
            xv.data.begin() + static_cast<std::size_t>(row + 1) * e_dim, y.data.begin());
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, matrix, row, e_dim] {
    const Tensor& g = grad(id);
    Tensor& dx = grad_ref(matrix);
    for (int k = 0; k < e_dim; ++k)
      dx.data[static_cast<std::size_t>(row) * e_dim + k] += g.data[static_cast<std::size_t>(k)];
  };
  return id;
}

int Tape::mean_rows(int matrix) {
  const Tensor& xv = val(matrix);
  if (xv.rank() != 2 || xv.dim(0) == 0)
    fail(ErrorCode::ShapeMismatch, "mean_rows needs a non-empty rank-2 input");
  const int n = xv.dim(0);
  const int e_dim = xv.dim(1);
  Tensor y({e_dim});
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < e_dim; ++k)
      y.data[static_cast<std::size_t>(k)] += xv.data[static_cast<std::size_t>(i) * e_dim + k];
  for (float& v : y.data) v /= static_cast<float>(n);
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, matrix, n, e_dim] {
    const Tensor& g = grad(id);
    Tensor& dx = grad_ref(matrix);
    const float inv = 1.0f / static_cast<float>(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < e_dim; ++k)
        dx.data[static_cast<std::size_t>(i) * e_dim + k] +=
            g.data[static_cast<std::size_t>(k)] * inv;
  };
  return id;
}

int Tape::flatten(int x) {
  const Tensor& xv = val(x);
  Tensor y({static_cast<int>(xv.data.size())});
  y.data = xv.data;
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, x] {
    const Tensor& g = grad(id);
    Tensor& dx = grad_ref(x);
    for (std::size_t k = 0; k < dx.data.size(); ++k) dx.data[k] += g.data[k];
  };
  return id;
}

int Tape::scale(int x, float factor) {
  const Tensor& xv = val(x);
  Tensor y(xv.shape);
  for (std::size_t k = 0; k < xv.data.size(); ++k) y.data[k] = xv.data[k] * factor;
  const int id = push(std::move(y));
  nodes_.back().back = [this, id, x, factor] {
    const Tensor& g = grad(id);
    Tensor& dx = grad_ref(x);
    for (std::size_t k = 0; k < dx.data.size(); ++k) dx.data[k] += g.data[k] * factor;
  };
  return id;
}

int Tape::self_attention(int rows, int w, int b, int v, const std::vector<float>* mask,
                         std::vector<float>* alpha_out) {
  const Tensor& ev = val(rows);
  if (ev.rank() != 2 || ev.dim(0) == 0)
    fail(ErrorCode::ShapeMismatch, "self_attention needs a non-empty rank-2 input");
  const int s_dim = ev.dim(0);
  const int e_dim = ev.dim(1);
  const Tensor& wv = val(w);
  if (wv.rank() != 2 || wv.dim(1) != e_dim)
    fail(ErrorCode::ShapeMismatch,
         "attention W " + wv.shape_str() + " vs rows " + ev.shape_str());
  const int a_dim = wv.dim(0);
  check_vector(val(b), a_dim, "attention b");
  check_vector(val(v), a_dim, "attention v");
  if (mask != nullptr && static_cast<int>(mask->size()) != s_dim)
    fail(ErrorCode::ShapeMismatch, "attention mask length");

  std::vector<bool> active(static_cast<std::size_t>(s_dim), true);
  int active_count = s_dim;
  if (mask != nullptr) {
    active_count = 0;
    for (int i = 0; i < s_dim; ++i) {
      active[static_cast<std::size_t>(i)] = (*mask)[static_cast<std::size_t>(i)] != 0.0f;
      if (active[static_cast<std::size_t>(i)]) ++active_count;
    }
    if (active_count == 0) fail(ErrorCode::AllMasked, "every attention row is masked out");
  }

  Tensor t({s_dim, a_dim});
  std::vector<double> scores(static_cast<std::size_t>(s_dim), 0.0);
  for (int i = 0; i < s_dim; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    float* ti = t.data.data() + static_cast<std::size_t>(i) * a_dim;
    std::copy(val(b).data.begin(), val(b).data.end(), ti);
    matvec_acc(wv, ev.data.data() + static_cast<std::size_t>(i) * e_dim, ti);
    double score = 0.0;
    for (int k = 0; k < a_dim; ++k) {
      ti[k] = std::tanh(ti[k]);
      score += static_cast<double>(val(v).data[static_cast<std::size_t>(k)]) * ti[k];
    }
    scores[static_cast<std::size_t>(i)] = score;
  }

  std::vector<float> alpha(static_cast<std::size_t>(s_dim), 0.0f);
  double max_score = 0.0;
  bool first = true;
  for (int i = 0; i < s_dim; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    if (first || scores[static_cast<std::size_t>(i)] > max_score)
      max_score = scores[static_cast<std::size_t>(i)];
    first = false;
  }
  double denom = 0.0;
  for (int i = 0; i < s_dim; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    alpha[static_cast<std::size_t>(i)] =
        static_cast<float>(std::exp(scores[static_cast<std::size_t>(i)] - max_score));
    denom += alpha[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < s_dim; ++i)
    alpha[static_cast<std::size_t>(i)] =
        static_cast<float>(alpha[static_cast<std::size_t>(i)] / denom);
  if (alpha_out != nullptr) *alpha_out = alpha;

  Tensor y({e_dim});
  for (int i = 0; i < s_dim; ++i) {
    const float a_i = alpha[static_cast<std::size_t>(i)];
    if (a_i == 0.0f) continue;
    const float* ei = ev.data.data() + static_cast<std::size_t>(i) * e_dim;
    for (int k = 0; k < e_dim; ++k) y.data[static_cast<std::size_t>(k)] += a_i * ei[k];
  }

  const int id = push(std::move(y));
  nodes_.back().back = [this, id, rows, w, b, v, t, alpha, active, s_dim, e_dim, a_dim] {
    const Tensor& g = grad(id);
    const Tensor& ev2 = val(rows);
    Tensor& de = grad_ref(rows);
    Tensor& dw = grad_ref(w);
    Tensor& db = grad_ref(b);
    Tensor& dv = grad_ref(v);

    std::vector<float> dalpha(static_cast<std::size_t>(s_dim), 0.0f);
    for (int i = 0; i < s_dim; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      const float* ei = ev2.data.data() + static_cast<std::size_t>(i) * e_dim;
      float* dei = de.data.data() + static_cast<std::size_t>(i) * e_dim;
      double dot = 0.0;
      const float a_i = alpha[static_cast<std::size_t>(i)];
      for (int k = 0; k < e_dim; ++k) {
        dot += static_cast<double>(g.data[static_cast<std::size_t>(k)]) * ei[k];
        dei[k] += a_i * g.data[static_cast<std::size_t>(k)];
      }
      dalpha[static_cast<std::size_t>(i)] = static_cast<float>(dot);
    }

    double weighted = 0.0;
    for (int i = 0; i < s_dim; ++i)
      weighted += static_cast<double>(alpha[static_cast<std::size_t>(i)]) *
                  dalpha[static_cast<std::size_t>(i)];
    for (int i = 0; i < s_dim; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      const float ds = alpha[static_cast<std::size_t>(i)] *
                       (dalpha[static_cast<std::size_t>(i)] - static_cast<float>(weighted));
      if (ds == 0.0f) continue;
      const float* ti = t.data.data() + static_cast<std::size_t>(i) * a_dim;
      const float* ei = ev2.data.data() + static_cast<std::size_t>(i) * e_dim;
      float* dei = de.data.data() + static_cast<std::size_t>(i) * e_dim;
      std::vector<float> du(static_cast<std::size_t>(a_dim));
      for (int k = 0; k < a_dim; ++k) {
        dv.data[static_cast<std::size_t>(k)] += ds * ti[k];
        const float dt = ds * val(v).data[static_cast<std::size_t>(k)];
        du[static_cast<std::size_t>(k)] = dt * (1.0f - ti[k] * ti[k]);
        db.data[static_cast<std::size_t>(k)] += du[static_cast<std::size_t>(k)];
      }
      outer_acc(dw, du.data(), ei);
      matvec_transpose_acc(val(w), du.data(), dei);
    }
  };
  return id;
}

void Tape::backward(int loss) {
  const Tensor& lv = val(loss);
  if (lv.numel() != 1) fail(ErrorCode::ShapeMismatch, "backward needs a scalar loss");
  grad_ref(loss).data[0] = 1.0f;
  for (int i = loss; i >= 0; --i) {
    const Node& node = nodes_[static_cast<std::size_t>(i)];
    if (node.back) node.back();
  }
  if (params_ == nullptr) return;
  for (const auto& [param_index, node_id] : param_leaves_) {
    const Tensor& g = grad(node_id);
    Tensor& dst = params_->entry(param_index).grad;
    for (std::size_t k = 0; k < dst.data.size(); ++k) dst.data[k] += g.data[k];
  }
}

}  // namespace newsclf::nn
