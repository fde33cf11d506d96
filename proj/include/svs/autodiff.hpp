#pragma once

// Reverse-mode automatic differentiation on dense Eigen matrices.
//
// Nodes form a DAG through shared_ptr edges; backward() walks the reachable
// subgraph in reverse creation order. Single-threaded by design: creation ids
// give a valid topological order and keep every run bit-reproducible.

#include "svs/common.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <unordered_set>
#include <vector>

namespace svs::ad {

using svs::Mat;

inline bool& grad_enabled() {
  thread_local bool enabled = true;
  return enabled;
}

// RAII guard that disables graph construction (inference mode).
struct NoGrad {
  bool prev;
  NoGrad() : prev(grad_enabled()) { grad_enabled() = false; }
  ~NoGrad() { grad_enabled() = prev; }
};

struct Node {
  Mat value;
  Mat grad;
  bool requires_grad = false;
  bool grad_ready = false;
  int64_t id = 0;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward_fn;

  void ensure_grad() {
    if (!grad_ready) {
      grad = Mat::Zero(value.rows(), value.cols());
      grad_ready = true;
    }
  }
};

inline int64_t next_node_id() {
  static int64_t counter = 0;
  return ++counter;
}

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::shared_ptr<Node> n) : node_(std::move(n)) {}

  static Tensor leaf(Mat v, bool requires_grad) {
    auto n = std::make_shared<Node>();
    n->value = std::move(v);
    n->requires_grad = requires_grad;
    n->id = next_node_id();
    return Tensor(n);
  }

  static Tensor constant(Mat v) { return leaf(std::move(v), false); }

  static Tensor scalar(double v) { return constant(Mat::Constant(1, 1, v)); }

  bool defined() const { return node_ != nullptr; }
  const Mat& value() const { return node_->value; }
  Mat& value_mut() { return node_->value; }
  const Mat& grad() const { return node_->grad; }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  int rows() const { return static_cast<int>(node_->value.rows()); }
  int cols() const { return static_cast<int>(node_->value.cols()); }
  double item() const {
    require(rows() == 1 && cols() == 1, "Tensor::item: not a scalar");
    return node_->value(0, 0);
  }
  std::shared_ptr<Node> node() const { return node_; }

  void zero_grad() {
    if (node_) {
      node_->grad_ready = false;
      node_->grad.resize(0, 0);
    }
  }

 private:
  std::shared_ptr<Node> node_;
};

namespace detail {

inline Tensor make_op(Mat value, std::vector<Tensor> inputs,
                      std::function<void(Node&)> backward_fn) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  n->id = next_node_id();
  bool rg = false;
  if (grad_enabled()) {
    for (const auto& t : inputs) rg = rg || t.requires_grad();
  }
  n->requires_grad = rg;
  if (rg) {
    for (const auto& t : inputs) n->parents.push_back(t.node());
    n->backward_fn = std::move(backward_fn);
  }
  return Tensor(n);
}

// Sum grad g down to the shape of the broadcast operand.
inline Mat reduce_to(const Mat& g, int rows, int cols) {
  Mat out = g;
  if (out.rows() != rows) {
    require(rows == 1, "broadcast reduce: row mismatch");
    out = out.colwise().sum();
  }
  if (out.cols() != cols) {
    require(cols == 1, "broadcast reduce: col mismatch");
    out = out.rowwise().sum();
  }
  return out;
}

// Expand operand b to the shape (rows, cols) following broadcast rules:
// exact match, single row, single column, or 1x1 scalar.
inline Mat broadcast_to(const Mat& b, int rows, int cols) {
  if (b.rows() == rows && b.cols() == cols) return b;
  if (b.rows() == 1 && b.cols() == 1) return Mat::Constant(rows, cols, b(0, 0));
  if (b.rows() == 1 && b.cols() == cols) return b.replicate(rows, 1);
  if (b.cols() == 1 && b.rows() == rows) return b.replicate(1, cols);
  throw Error("broadcast: incompatible shapes");
}

inline void check_broadcastable(const Mat& a, const Mat& b) {
  bool ok = (b.rows() == a.rows() || b.rows() == 1) && (b.cols() == a.cols() || b.cols() == 1);
  require(ok, "broadcast: shapes incompatible");
}

}  // namespace detail

// -------------------------------------------------------------- binary ops

inline Tensor add(const Tensor& a, const Tensor& b) {
  detail::check_broadcastable(a.value(), b.value());
  Mat v = a.value() + detail::broadcast_to(b.value(), a.rows(), a.cols());
  return detail::make_op(std::move(v), {a, b}, [an = a.node(), bn = b.node()](Node& n) {
    if (an->requires_grad) {
      an->ensure_grad();
      an->grad += n.grad;
    }
    if (bn->requires_grad) {
      bn->ensure_grad();
      bn->grad += detail::reduce_to(n.grad, static_cast<int>(bn->value.rows()),
                                    static_cast<int>(bn->value.cols()));
    }
  });
}

inline Tensor sub(const Tensor& a, const Tensor& b) {
  detail::check_broadcastable(a.value(), b.value());
  Mat v = a.value() - detail::broadcast_to(b.value(), a.rows(), a.cols());
  return detail::make_op(std::move(v), {a, b}, [an = a.node(), bn = b.node()](Node& n) {
    if (an->requires_grad) {
      an->ensure_grad();
      an->grad += n.grad;
    }
    if (bn->requires_grad) {
      bn->ensure_grad();
      bn->grad -= detail::reduce_to(n.grad, static_cast<int>(bn->value.rows()),
                                    static_cast<int>(bn->value.cols()));
    }
  });
}

inline Tensor mul(const Tensor& a, const Tensor& b) {
  detail::check_broadcastable(a.value(), b.value());
  Mat bb = detail::broadcast_to(b.value(), a.rows(), a.cols());
  Mat v = a.value().cwiseProduct(bb);
  return detail::make_op(std::move(v), {a, b},
                         [an = a.node(), bn = b.node(), bb](Node& n) {
                           if (an->requires_grad) {
                             an->ensure_grad();
                             an->grad += n.grad.cwiseProduct(bb);
                           }
                           if (bn->requires_grad) {
                             bn->ensure_grad();
                             Mat g = n.grad.cwiseProduct(an->value);
                             bn->grad += detail::reduce_to(g, static_cast<int>(bn->value.rows()),
                                                           static_cast<int>(bn->value.cols()));
                           }
                         });
}

inline Tensor div(const Tensor& a, const Tensor& b) {
  detail::check_broadcastable(a.value(), b.value());
  Mat bb = detail::broadcast_to(b.value(), a.rows(), a.cols());
  Mat v = a.value().cwiseQuotient(bb);
  return detail::make_op(std::move(v), {a, b},
                         [an = a.node(), bn = b.node(), bb](Node& n) {
                           if (an->requires_grad) {
                             an->ensure_grad();
                             an->grad += n.grad.cwiseQuotient(bb);
                           }
                           if (bn->requires_grad) {
                             bn->ensure_grad();
                             Mat g = -n.grad.cwiseProduct(an->value).cwiseQuotient(bb.cwiseProduct(bb));
                             bn->grad += detail::reduce_to(g, static_cast<int>(bn->value.rows()),
                                                           static_cast<int>(bn->value.cols()));
                           }
                         });
}

inline Tensor matmul(const Tensor& a, const Tensor& b) {
  require(a.cols() == b.rows(), "matmul: inner dims mismatch");
  Mat v = a.value() * b.value();
  return detail::make_op(std::move(v), {a, b}, [an = a.node(), bn = b.node()](Node& n) {
    if (an->requires_grad) {
      an->ensure_grad();
      an->grad.noalias() += n.grad * bn->value.transpose();
    }
    if (bn->requires_grad) {
      bn->ensure_grad();
      bn->grad.noalias() += an->value.transpose() * n.grad;
    }
  });
}

// --------------------------------------------------------------- unary ops

inline Tensor neg(const Tensor& a) {
  return detail::make_op(-a.value(), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad -= n.grad;
  });
}

inline Tensor transpose(const Tensor& a) {
  return detail::make_op(a.value().transpose(), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.transpose();
  });
}

inline Tensor scale(const Tensor& a, double s) {
  return detail::make_op(a.value() * s, {a}, [an = a.node(), s](Node& n) {
    an->ensure_grad();
    an->grad += n.grad * s;
  });
}

inline Tensor add_const(const Tensor& a, double c) {
  return detail::make_op(a.value().array() + c, {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad += n.grad;
  });
}

inline Tensor vexp(const Tensor& a) {
  Mat v = a.value().array().exp();
  return detail::make_op(v, {a}, [an = a.node(), v](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.cwiseProduct(v);
  });
}

inline Tensor vlog(const Tensor& a) {
  Mat v = a.value().array().log();
  return detail::make_op(std::move(v), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.cwiseQuotient(an->value);
  });
}

inline Tensor vsqrt(const Tensor& a) {
  Mat v = a.value().array().sqrt();
  return detail::make_op(v, {a}, [an = a.node(), v](Node& n) {
    an->ensure_grad();
    an->grad += (n.grad.array() * 0.5 / v.array()).matrix();
  });
}

inline Tensor square(const Tensor& a) {
  Mat v = a.value().array().square();
  return detail::make_op(std::move(v), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad += 2.0 * n.grad.cwiseProduct(an->value);
  });
}

inline Tensor vabs(const Tensor& a) {
  Mat v = a.value().array().abs();
  return detail::make_op(std::move(v), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.cwiseProduct(an->value.array().sign().matrix());
  });
}

inline Tensor vtanh(const Tensor& a) {
  Mat v = a.value().array().tanh();
  return detail::make_op(v, {a}, [an = a.node(), v](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.cwiseProduct((1.0 - v.array().square()).matrix());
  });
}

inline Tensor sigmoid(const Tensor& a) {
  Mat v = (1.0 / (1.0 + (-a.value().array()).exp())).matrix();
  return detail::make_op(v, {a}, [an = a.node(), v](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.cwiseProduct((v.array() * (1.0 - v.array())).matrix());
  });
}

inline Tensor relu(const Tensor& a) {
  Mat v = a.value().cwiseMax(0.0);
  return detail::make_op(std::move(v), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.cwiseProduct((an->value.array() > 0.0).cast<double>().matrix());
  });
}

inline Tensor clamp(const Tensor& a, double lo, double hi) {
  Mat v = a.value().cwiseMax(lo).cwiseMin(hi);
  return detail::make_op(std::move(v), {a}, [an = a.node(), lo, hi](Node& n) {
    an->ensure_grad();
    Mat mask = ((an->value.array() > lo) && (an->value.array() < hi)).cast<double>();
    an->grad += n.grad.cwiseProduct(mask);
  });
}

// Stop-gradient: value copied, no edge into the graph.
inline Tensor detach(const Tensor& a) { return Tensor::constant(a.value()); }

// Straight-through estimator: forward takes `replacement`, backward passes the
// incoming gradient to `z` unchanged.
inline Tensor straight_through(const Tensor& z, const Mat& replacement) {
  require(replacement.rows() == z.rows() && replacement.cols() == z.cols(),
          "straight_through: shape mismatch");
  return detail::make_op(replacement, {z}, [zn = z.node()](Node& n) {
    zn->ensure_grad();
    zn->grad += n.grad;
  });
}

// -------------------------------------------------------------- reductions

inline Tensor sum_all(const Tensor& a) {
  Mat v = Mat::Constant(1, 1, a.value().sum());
  return detail::make_op(std::move(v), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad.array() += n.grad(0, 0);
  });
}

inline Tensor mean_all(const Tensor& a) {
  const double inv = 1.0 / static_cast<double>(a.value().size());
  Mat v = Mat::Constant(1, 1, a.value().sum() * inv);
  return detail::make_op(std::move(v), {a}, [an = a.node(), inv](Node& n) {
    an->ensure_grad();
    an->grad.array() += n.grad(0, 0) * inv;
  });
}

// Sum across columns for each row -> [R x 1].
inline Tensor rowsum(const Tensor& a) {
  Mat v = a.value().rowwise().sum();
  return detail::make_op(std::move(v), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.replicate(1, an->value.cols());
  });
}

// Sum down each column -> [1 x C].
inline Tensor colsum(const Tensor& a) {
  Mat v = a.value().colwise().sum();
  return detail::make_op(std::move(v), {a}, [an = a.node()](Node& n) {
    an->ensure_grad();
    an->grad += n.grad.replicate(an->value.rows(), 1);
  });
}

inline Tensor rowmean(const Tensor& a) {
  return scale(rowsum(a), 1.0 / static_cast<double>(a.cols()));
}

// ------------------------------------------------------ structural reshapes

inline Tensor slice_rows(const Tensor& a, int r0, int n_rows) {
  require(r0 >= 0 && n_rows >= 0 && r0 + n_rows <= a.rows(), "slice_rows: out of range");
  Mat v = a.value().middleRows(r0, n_rows);
  return detail::make_op(std::move(v), {a}, [an = a.node(), r0, n_rows](Node& n) {
    an->ensure_grad();
    an->grad.middleRows(r0, n_rows) += n.grad;
  });
}

inline Tensor slice_cols(const Tensor& a, int c0, int n_cols) {
  require(c0 >= 0 && n_cols >= 0 && c0 + n_cols <= a.cols(), "slice_cols: out of range");
  Mat v = a.value().middleCols(c0, n_cols);
  return detail::make_op(std::move(v), {a}, [an = a.node(), c0, n_cols](Node& n) {
    an->ensure_grad();
    an->grad.middleCols(c0, n_cols) += n.grad;
  });
}

inline Tensor concat_rows(const std::vector<Tensor>& parts) {
  require(!parts.empty(), "concat_rows: empty input");
  int total = 0;
  const int cols = parts[0].cols();
  for (const auto& p : parts) {
    require(p.cols() == cols, "concat_rows: column mismatch");
    total += p.rows();
  }
  Mat v(total, cols);
  int r = 0;
  for (const auto& p : parts) {
    v.middleRows(r, p.rows()) = p.value();
    r += p.rows();
  }
  std::vector<std::shared_ptr<Node>> nodes;
  std::vector<int> offsets;
  r = 0;
  for (const auto& p : parts) {
    nodes.push_back(p.node());
    offsets.push_back(r);
    r += p.rows();
  }
  return detail::make_op(std::move(v), parts, [nodes, offsets](Node& n) {
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i]->requires_grad) continue;
      nodes[i]->ensure_grad();
      nodes[i]->grad += n.grad.middleRows(offsets[i], nodes[i]->value.rows());
    }
  });
}

inline Tensor concat_cols(const std::vector<Tensor>& parts) {
  require(!parts.empty(), "concat_cols: empty input");
  int total = 0;
  const int rows = parts[0].rows();
  for (const auto& p : parts) {
    require(p.rows() == rows, "concat_cols: row mismatch");
    total += p.cols();
  }
  Mat v(rows, total);
  int c = 0;
  for (const auto& p : parts) {
    v.middleCols(c, p.cols()) = p.value();
    c += p.cols();
  }
  std::vector<std::shared_ptr<Node>> nodes;
  std::vector<int> offsets;
  c = 0;
  for (const auto& p : parts) {
    nodes.push_back(p.node());
    offsets.push_back(c);
    c += p.cols();
  }
  return detail::make_op(std::move(v), parts, [nodes, offsets](Node& n) {
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i]->requires_grad) continue;
      nodes[i]->ensure_grad();
      nodes[i]->grad += n.grad.middleCols(offsets[i], nodes[i]->value.cols());
    }
  });
}

// Row gather (embedding lookup). Backward scatter-adds.
inline Tensor gather_rows(const Tensor& a, const std::vector<int>& idx) {
  Mat v(static_cast<int>(idx.size()), a.cols());
  for (size_t i = 0; i < idx.size(); ++i) {
    require(idx[i] >= 0 && idx[i] < a.rows(), "gather_rows: index out of range");
    v.row(static_cast<int>(i)) = a.value().row(idx[i]);
  }
  return detail::make_op(std::move(v), {a}, [an = a.node(), idx](Node& n) {
    an->ensure_grad();
    for (size_t i = 0; i < idx.size(); ++i)
      an->grad.row(idx[i]) += n.grad.row(static_cast<int>(i));
  });
}

// Length regulator: row i repeated counts[i] times, order preserved.
inline Tensor repeat_rows(const Tensor& a, const std::vector<int>& counts) {
  require(static_cast<int>(counts.size()) == a.rows(), "repeat_rows: counts size mismatch");
  int total = 0;
  for (int c : counts) {
    require(c > 0, "repeat_rows: zero duration");
    total += c;
  }
  Mat v(total, a.cols());
  int r = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < counts[i]; ++k) v.row(r++) = a.value().row(i);
  return detail::make_op(std::move(v), {a}, [an = a.node(), counts](Node& n) {
    an->ensure_grad();
    int rr = 0;
    for (int i = 0; i < an->value.rows(); ++i)
      for (int k = 0; k < counts[i]; ++k) an->grad.row(i) += n.grad.row(rr++);
  });
}

// Mean over each span [bounds[i], bounds[i+1]). bounds must be monotone,
// start at 0 and end at a.rows().
inline Tensor segment_mean_rows(const Tensor& a, const std::vector<int>& bounds) {
  require(bounds.size() >= 2, "segment_mean_rows: need at least one span");
  require(bounds.front() == 0 && bounds.back() == a.rows(),
          "segment_mean_rows: bounds must cover all rows");
  const int n = static_cast<int>(bounds.size()) - 1;
  Mat v(n, a.cols());
  for (int i = 0; i < n; ++i) {
    const int len = bounds[i + 1] - bounds[i];
    require(len > 0, "segment_mean_rows: empty phoneme span");
    v.row(i) = a.value().middleRows(bounds[i], len).colwise().mean();
  }
  return detail::make_op(std::move(v), {a}, [an = a.node(), bounds, n](Node& n_) {
    an->ensure_grad();
    for (int i = 0; i < n; ++i) {
      const int len = bounds[i + 1] - bounds[i];
      an->grad.middleRows(bounds[i], len).rowwise() += (n_.grad.row(i) / len);
    }
  });
}

// ------------------------------------------------------------ softmax / CE

inline Tensor softmax_rows(const Tensor& a) {
  Mat v = a.value();
  for (int i = 0; i < v.rows(); ++i) {
    Eigen::RowVectorXd row = v.row(i);
    double m = row.maxCoeff();
    row = (row.array() - m).exp();
    v.row(i) = row / row.sum();
  }
  return detail::make_op(v, {a}, [an = a.node(), v](Node& n) {
    an->ensure_grad();
    for (int i = 0; i < v.rows(); ++i) {
      const double dot = n.grad.row(i).dot(v.row(i));
      an->grad.row(i) += (n.grad.row(i).array() - dot).matrix().cwiseProduct(v.row(i));
    }
  });
}

// Mean cross-entropy over rows against integer targets.
inline Tensor cross_entropy_rows(const Tensor& logits, const std::vector<int>& targets) {
  require(static_cast<int>(targets.size()) == logits.rows(), "cross_entropy: target count");
  const int R = logits.rows();
  Mat probs = logits.value();
  double loss = 0.0;
  for (int i = 0; i < R; ++i) {
    require(targets[i] >= 0 && targets[i] < logits.cols(), "cross_entropy: target out of range");
    Eigen::RowVectorXd row = probs.row(i);
    const double m = row.maxCoeff();
    const double lse = m + std::log((row.array() - m).exp().sum());
    loss += lse - row(targets[i]);
    probs.row(i) = (row.array() - lse).exp();
  }
  loss /= R;
  return detail::make_op(Mat::Constant(1, 1, loss), {logits},
                         [ln = logits.node(), probs, targets, R](Node& n) {
                           ln->ensure_grad();
                           Mat g = probs;
                           for (int i = 0; i < R; ++i) g(i, targets[i]) -= 1.0;
                           ln->grad += (n.grad(0, 0) / R) * g;
                         });
}

// ------------------------------------------------------------ convolutions

enum class PadMode { kSame, kCausal, kValid };

// im2col along the row (time) axis: input [T x C] -> [T' x K*C], where output
// row t stacks the K taps around t. Zero padding outside the sequence.
inline Tensor unfold_time(const Tensor& a, int K, int dilation, PadMode pad) {
  const int T = a.rows(), C = a.cols();
  require(K >= 1 && dilation >= 1, "unfold_time: bad kernel/dilation");
  const int span = (K - 1) * dilation;
  int left = 0, t_out = T;
  switch (pad) {
    case PadMode::kSame: left = span / 2; break;
    case PadMode::kCausal: left = span; break;
    case PadMode::kValid:
      left = 0;
      t_out = T - span;
      require(t_out >= 1, "unfold_time: input shorter than receptive field");
      break;
  }
  Mat v = Mat::Zero(t_out, K * C);
  for (int t = 0; t < t_out; ++t) {
    for (int k = 0; k < K; ++k) {
      const int src = t - left + k * dilation;
      if (src >= 0 && src < T) v.block(t, k * C, 1, C) = a.value().row(src);
    }
  }
  return detail::make_op(std::move(v), {a}, [an = a.node(), K, dilation, left, t_out, C](Node& n) {
    an->ensure_grad();
    const int T = static_cast<int>(an->value.rows());
    for (int t = 0; t < t_out; ++t) {
      for (int k = 0; k < K; ++k) {
        const int src = t - left + k * dilation;
        if (src >= 0 && src < T) an->grad.row(src) += n.grad.block(t, k * C, 1, C);
      }
    }
  });
}

// Valid convolution of every column with a fixed kernel (used by SSIM's
// separable Gaussian window). kernel is not a graph input.
inline Tensor conv_cols_fixed(const Tensor& a, const std::vector<double>& kernel) {
  const int T = a.rows(), C = a.cols(), K = static_cast<int>(kernel.size());
  require(T >= K, "conv_cols_fixed: input shorter than kernel");
  Mat v = Mat::Zero(T - K + 1, C);
  for (int t = 0; t < T - K + 1; ++t)
    for (int k = 0; k < K; ++k) v.row(t) += kernel[k] * a.value().row(t + k);
  return detail::make_op(std::move(v), {a}, [an = a.node(), kernel, K](Node& n) {
    an->ensure_grad();
    for (int t = 0; t < n.grad.rows(); ++t)
      for (int k = 0; k < K; ++k) an->grad.row(t + k) += kernel[k] * n.grad.row(t);
  });
}

// ----------------------------------------------------------------- backward

inline void backward(const Tensor& loss) {
  require(loss.rows() == 1 && loss.cols() == 1, "backward: loss must be scalar");
  require(loss.node()->requires_grad, "backward: loss does not require grad");

  std::vector<Node*> order;
  std::unordered_set<Node*> seen;
  std::vector<Node*> stack{loss.node().get()};
  while (!stack.empty()) {
    Node* cur = stack.back();
    stack.pop_back();
    if (!cur->requires_grad || seen.count(cur)) continue;
    seen.insert(cur);
    order.push_back(cur);
    for (const auto& p : cur->parents) stack.push_back(p.get());
  }
  std::sort(order.begin(), order.end(), [](Node* a, Node* b) { return a->id > b->id; });

  loss.node()->ensure_grad();
  loss.node()->grad(0, 0) = 1.0;
  for (Node* n : order) {
    if (n->backward_fn && n->grad_ready) n->backward_fn(*n);
  }
}

// operator sugar
inline Tensor operator+(const Tensor& a, const Tensor& b) { return add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return sub(a, b); }
inline Tensor operator*(const Tensor& a, const Tensor& b) { return mul(a, b); }
inline Tensor operator*(const Tensor& a, double s) { return scale(a, s); }
inline Tensor operator*(double s, const Tensor& a) { return scale(a, s); }
inline Tensor operator-(const Tensor& a) { return neg(a); }

}  // namespace svs::ad
