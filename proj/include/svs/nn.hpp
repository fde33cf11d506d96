#pragma once

// Layers, parameter bookkeeping and the Adam optimizer. Parameters register
// into a ParamStore in construction order, which fixes the optimizer state
// layout and the checkpoint blob order.

#include "svs/autodiff.hpp"
#include "svs/common.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace svs::nn {

using ad::Tensor;

class ParamStore {
 public:
  Tensor add(const std::string& name, Mat init) {
    for (const auto& [n, t] : params_) require(n != name, "duplicate parameter name: " + name);
    Tensor t = Tensor::leaf(std::move(init), true);
    params_.emplace_back(name, t);
    return t;
  }

  const std::vector<std::pair<std::string, Tensor>>& all() const { return params_; }

  size_t size() const { return params_.size(); }

  int64_t count_values() const {
    int64_t n = 0;
    for (const auto& [name, t] : params_) n += t.value().size();
    return n;
  }

  void zero_grad() {
    for (auto& [name, t] : params_) const_cast<Tensor&>(t).zero_grad();
  }

  void set_requires_grad(bool rg) {
    for (auto& [name, t] : params_) t.node()->requires_grad = rg;
  }

  void save(std::ostream& os) const {
    io::write_u32(os, static_cast<uint32_t>(params_.size()));
    for (const auto& [name, t] : params_) {
      io::write_string(os, name);
      io::write_mat_f64(os, t.value());
    }
  }

  void load(std::istream& is) {
    const uint32_t n = io::read_u32(is);
    require(n == params_.size(), "ParamStore::load: parameter count mismatch");
    for (auto& [name, t] : params_) {
      std::string got = io::read_string(is);
      require(got == name, "ParamStore::load: expected param '" + name + "', got '" + got + "'");
      Mat m = io::read_mat_f64(is);
      require(m.rows() == t.value().rows() && m.cols() == t.value().cols(),
              "ParamStore::load: shape mismatch for " + name);
      const_cast<Tensor&>(t).value_mut() = m;
    }
  }
};

// Deterministic fan-in scaled init.
inline Mat init_linear(Rng& rng, int in, int out) {
  const double s = std::sqrt(1.0 / std::max(1, in));
  return rng.uniform_mat(in, out, -s, s);
}

inline Mat init_embedding(Rng& rng, int vocab, int dim) {
  return rng.normal_mat(vocab, dim) * 0.02;
}

struct Linear {
  Tensor w, b;
  Linear() = default;
  Linear(ParamStore& ps, Rng& rng, const std::string& name, int in, int out, bool bias = true) {
    w = ps.add(name + ".w", init_linear(rng, in, out));
    if (bias) b = ps.add(name + ".b", Mat::Zero(1, out));
  }
  Tensor operator()(const Tensor& x) const {
    Tensor y = ad::matmul(x, w);
    if (b.defined()) y = ad::add(y, b);
    return y;
  }
};

struct Embedding {
  Tensor table;
  Embedding() = default;
  Embedding(ParamStore& ps, Rng& rng, const std::string& name, int vocab, int dim) {
    table = ps.add(name, init_embedding(rng, vocab, dim));
  }
  Tensor operator()(const std::vector<int>& ids) const { return ad::gather_rows(table, ids); }
};

// Row-wise layer normalization with learned gain/bias over channels.
struct LayerNorm {
  Tensor g, b;
  double eps;
  LayerNorm() : eps(1e-10) {}
  LayerNorm(ParamStore& ps, const std::string& name, int dim, double eps_ = 1e-10) : eps(eps_) {
    g = ps.add(name + ".g", Mat::Ones(1, dim));
    b = ps.add(name + ".b", Mat::Zero(1, dim));
  }
  Tensor operator()(const Tensor& x) const {
    Tensor mu = ad::rowmean(x);
    Tensor xc = ad::sub(x, mu);
    Tensor var = ad::rowmean(ad::square(xc));
    Tensor y = ad::div(xc, ad::vsqrt(ad::add_const(var, eps)));
    if (g.defined()) y = ad::add(ad::mul(y, g), b);
    return y;
  }
};

// Plain normalization (no learned affine), shared by the style adaptive norm.
inline Tensor layer_norm_rows(const Tensor& x, double eps = 1e-10) {
  Tensor mu = ad::rowmean(x);
  Tensor xc = ad::sub(x, mu);
  Tensor var = ad::rowmean(ad::square(xc));
  return ad::div(xc, ad::vsqrt(ad::add_const(var, eps)));
}

// 1-D convolution along the time axis via unfold + matmul. Input [T x Cin],
// output [T' x Cout].
struct Conv1d {
  Tensor w, b;
  int kernel = 1, dilation = 1;
  ad::PadMode pad = ad::PadMode::kSame;
  Conv1d() = default;
  Conv1d(ParamStore& ps, Rng& rng, const std::string& name, int in, int out, int k,
         ad::PadMode pad_ = ad::PadMode::kSame, int dil = 1)
      : kernel(k), dilation(dil), pad(pad_) {
    w = ps.add(name + ".w", init_linear(rng, in * k, out));
    b = ps.add(name + ".b", Mat::Zero(1, out));
  }
  Tensor operator()(const Tensor& x) const {
    Tensor u = ad::unfold_time(x, kernel, dilation, pad);
    return ad::add(ad::matmul(u, w), b);
  }
  int receptive_field() const { return 1 + (kernel - 1) * dilation; }
};

// Sinusoidal absolute positions, [len x dim], starting at `offset`.
inline Mat sinusoid_positions(int len, int dim, int offset = 0) {
  Mat p(len, dim);
  for (int t = 0; t < len; ++t) {
    for (int j = 0; j < dim; ++j) {
      const double angle = (t + offset) / std::pow(10000.0, 2.0 * (j / 2) / dim);
      p(t, j) = (j % 2 == 0) ? std::sin(angle) : std::cos(angle);
    }
  }
  return p;
}

// Multi-head self attention. `mask` is an additive [T x T] matrix (0 where
// attention is allowed, large negative where blocked); pass nullptr for full
// attention.
struct MultiHeadAttention {
  Linear wq, wk, wv, wo;
  int n_heads = 1, d_model = 0;
  MultiHeadAttention() = default;
  MultiHeadAttention(ParamStore& ps, Rng& rng, const std::string& name, int d, int heads)
      : n_heads(heads), d_model(d) {
    require(d % heads == 0, "attention: d_model must be divisible by n_heads");
    wq = Linear(ps, rng, name + ".q", d, d);
    wk = Linear(ps, rng, name + ".k", d, d);
    wv = Linear(ps, rng, name + ".v", d, d);
    wo = Linear(ps, rng, name + ".o", d, d);
  }
  Tensor operator()(const Tensor& x, const Mat* mask) const {
    const int dk = d_model / n_heads;
    Tensor q = wq(x), k = wk(x), v = wv(x);
    std::vector<Tensor> heads;
    heads.reserve(n_heads);
    for (int h = 0; h < n_heads; ++h) {
      Tensor qh = ad::slice_cols(q, h * dk, dk);
      Tensor kh = ad::slice_cols(k, h * dk, dk);
      Tensor vh = ad::slice_cols(v, h * dk, dk);
      Tensor scores = ad::scale(ad::matmul(qh, ad::transpose(kh)), 1.0 / std::sqrt(double(dk)));
      if (mask) scores = ad::add(scores, Tensor::constant(*mask));
      Tensor att = ad::softmax_rows(scores);
      heads.push_back(ad::matmul(att, vh));
    }
    return wo(ad::concat_cols(heads));
  }
};

// Feed-forward transformer block: self-attention + convolutional feed-forward,
// pre-norm residual wiring. `causal_ffn` left-pads the convolutions so the
// block never reads future positions.
struct FFTBlock {
  MultiHeadAttention attn;
  LayerNorm ln1, ln2;
  Conv1d ff1, ff2;
  FFTBlock() = default;
  FFTBlock(ParamStore& ps, Rng& rng, const std::string& name, int d, int heads, int ffn, int kernel,
           bool causal_ffn = false) {
    attn = MultiHeadAttention(ps, rng, name + ".attn", d, heads);
    ln1 = LayerNorm(ps, name + ".ln1", d);
    ln2 = LayerNorm(ps, name + ".ln2", d);
    const ad::PadMode pm = causal_ffn ? ad::PadMode::kCausal : ad::PadMode::kSame;
    ff1 = Conv1d(ps, rng, name + ".ff1", d, ffn, kernel, pm);
    ff2 = Conv1d(ps, rng, name + ".ff2", ffn, d, 1, pm);
  }
  Tensor operator()(const Tensor& x, const Mat* mask) const {
    Tensor h = ad::add(x, attn(ln1(x), mask));
    return ad::add(h, ff2(ad::relu(ff1(ln2(h)))));
  }
};

// ------------------------------------------------------------------- Adam

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.98;
  double eps = 1e-9;
};

class Adam {
 public:
  Adam(ParamStore& ps, AdamConfig cfg) : ps_(ps), cfg_(cfg) {
    for (const auto& [name, t] : ps.all()) {
      m_.push_back(Mat::Zero(t.value().rows(), t.value().cols()));
      v_.push_back(Mat::Zero(t.value().rows(), t.value().cols()));
    }
  }

  void step() {
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, t_);
    const double bc2 = 1.0 - std::pow(cfg_.beta2, t_);
    size_t i = 0;
    for (auto& [name, t] : ps_.all()) {
      auto& tt = const_cast<Tensor&>(t);
      if (!tt.node()->grad_ready) {
        ++i;
        continue;
      }
      const Mat& g = tt.grad();
      m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * g;
      v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * g.cwiseProduct(g);
      Mat mh = m_[i] / bc1;
      Mat vh = v_[i] / bc2;
      tt.value_mut() -= cfg_.lr * mh.cwiseQuotient(vh.cwiseSqrt().array().matrix() +
                                                   Mat::Constant(vh.rows(), vh.cols(), cfg_.eps));
      ++i;
    }
  }

  void set_lr(double lr) { cfg_.lr = lr; }
  int64_t steps() const { return t_; }

  void save(std::ostream& os) const {
    io::write_u64(os, static_cast<uint64_t>(t_));
    io::write_u32(os, static_cast<uint32_t>(m_.size()));
    for (size_t i = 0; i < m_.size(); ++i) {
      io::write_mat_f64(os, m_[i]);
      io::write_mat_f64(os, v_[i]);
    }
  }

  void load(std::istream& is) {
    t_ = static_cast<int64_t>(io::read_u64(is));
    const uint32_t n = io::read_u32(is);
    require(n == m_.size(), "Adam::load: slot count mismatch");
    for (size_t i = 0; i < m_.size(); ++i) {
      m_[i] = io::read_mat_f64(is);
      v_[i] = io::read_mat_f64(is);
    }
  }

 private:
  ParamStore& ps_;
  AdamConfig cfg_;
  std::vector<Mat> m_, v_;
  int64_t t_ = 0;
};

}  // namespace svs::nn
