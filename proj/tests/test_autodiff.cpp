#include "svs/autodiff.hpp"
#include "svs/nn.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>

using namespace svs;
using ad::Tensor;

namespace {

// Central finite differences vs analytic gradient; returns the relative error
// ||ga - gn|| / max(||ga|| + ||gn||, tiny).
double grad_check(const std::function<Tensor(const Tensor&)>& f, const Mat& x0,
                  double h = 1e-6) {
  Tensor x = Tensor::leaf(x0, true);
  Tensor loss = f(x);
  ad::backward(loss);
  Mat ga = x.grad();

  Mat gn(x0.rows(), x0.cols());
  for (int i = 0; i < x0.rows(); ++i) {
    for (int j = 0; j < x0.cols(); ++j) {
      Mat xp = x0, xm = x0;
      xp(i, j) += h;
      xm(i, j) -= h;
      ad::NoGrad ng;
      double fp = f(Tensor::constant(xp)).item();
      double fm = f(Tensor::constant(xm)).item();
      gn(i, j) = (fp - fm) / (2.0 * h);
    }
  }
  double denom = std::max(ga.norm() + gn.norm(), 1e-12);
  return (ga - gn).norm() / denom;
}

}  // namespace

TEST_CASE("elementwise and broadcast ops match finite differences") {
  Rng rng(7);
  Mat x = rng.normal_mat(4, 3);

  CHECK(grad_check([](const Tensor& t) { return ad::mean_all(ad::square(t)); }, x) < 1e-6);
  CHECK(grad_check([](const Tensor& t) { return ad::sum_all(ad::vtanh(t)); }, x) < 1e-6);
  CHECK(grad_check([](const Tensor& t) { return ad::sum_all(ad::sigmoid(t)); }, x) < 1e-6);
  CHECK(grad_check([](const Tensor& t) { return ad::sum_all(ad::vexp(t)); }, x) < 1e-6);
  CHECK(grad_check([](const Tensor& t) { return ad::mean_all(ad::vsqrt(ad::add_const(ad::square(t), 1.0))); }, x) < 1e-6);

  // broadcasting row/col vectors through mul and div
  Mat row = rng.normal_mat(1, 3).array() + 2.0;
  CHECK(grad_check(
            [&](const Tensor& t) {
              return ad::mean_all(ad::div(ad::mul(t, Tensor::constant(row)),
                                          ad::add_const(ad::square(t), 1.0)));
            },
            x) < 1e-6);

  // gradient w.r.t. the broadcast operand itself
  CHECK(grad_check(
            [&](const Tensor& t) {
              Tensor big = Tensor::constant(Mat::Ones(4, 3));
              return ad::mean_all(ad::square(ad::mul(big, t)));
            },
            row) < 1e-6);
}

TEST_CASE("matmul, softmax, cross entropy gradients") {
  Rng rng(11);
  Mat a = rng.normal_mat(3, 4), b = rng.normal_mat(4, 2);

  CHECK(grad_check(
            [&](const Tensor& t) { return ad::sum_all(ad::square(ad::matmul(t, Tensor::constant(b)))); },
            a) < 1e-6);
  CHECK(grad_check(
            [&](const Tensor& t) { return ad::sum_all(ad::square(ad::matmul(Tensor::constant(a), t))); },
            b) < 1e-6);

  Mat logits = rng.normal_mat(5, 7);
  CHECK(grad_check([](const Tensor& t) { return ad::mean_all(ad::square(ad::softmax_rows(t))); },
                   logits) < 1e-6);

  std::vector<int> targets{0, 3, 6, 2, 2};
  CHECK(grad_check([&](const Tensor& t) { return ad::cross_entropy_rows(t, targets); }, logits) <
        1e-6);

  // exact CE value for a perfect one-hot prediction approaches 0
  Mat huge = Mat::Constant(2, 3, -100.0);
  huge(0, 1) = 100.0;
  huge(1, 2) = 100.0;
  double ce = ad::cross_entropy_rows(Tensor::constant(huge), {1, 2}).item();
  CHECK(ce == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("structural ops: slice, concat, gather, repeat, segment mean") {
  Rng rng(13);
  Mat x = rng.normal_mat(6, 4);

  CHECK(grad_check(
            [](const Tensor& t) {
              Tensor s = ad::concat_rows({ad::slice_rows(t, 0, 2), ad::slice_rows(t, 3, 3)});
              return ad::sum_all(ad::square(s));
            },
            x) < 1e-6);
  CHECK(grad_check(
            [](const Tensor& t) {
              Tensor s = ad::concat_cols({ad::slice_cols(t, 1, 2), ad::slice_cols(t, 0, 1)});
              return ad::mean_all(ad::square(s));
            },
            x) < 1e-6);
  CHECK(grad_check(
            [](const Tensor& t) {
              return ad::sum_all(ad::square(ad::gather_rows(t, {5, 0, 0, 2})));
            },
            x) < 1e-6);
  CHECK(grad_check(
            [](const Tensor& t) {
              return ad::mean_all(ad::square(ad::repeat_rows(t, {2, 1, 3, 1, 2, 1})));
            },
            x) < 1e-6);
  CHECK(grad_check(
            [](const Tensor& t) {
              return ad::sum_all(ad::square(ad::segment_mean_rows(t, {0, 2, 3, 6})));
            },
            x) < 1e-6);

  // repeat_rows definition: [A,B] with [2,3] -> [A,A,B,B,B]
  Mat ab(2, 1);
  ab << 1.0, 2.0;
  Mat rep = ad::repeat_rows(Tensor::constant(ab), {2, 3}).value();
  Mat expect(5, 1);
  expect << 1, 1, 2, 2, 2;
  CHECK((rep - expect).norm() == 0.0);
}

TEST_CASE("unfold_time padding modes") {
  Rng rng(17);
  Mat x = rng.normal_mat(8, 3);

  for (auto pad : {ad::PadMode::kSame, ad::PadMode::kCausal, ad::PadMode::kValid}) {
    CHECK(grad_check(
              [pad](const Tensor& t) {
                return ad::sum_all(ad::square(ad::unfold_time(t, 3, 2, pad)));
              },
              x) < 1e-6);
  }

  // causal mode never reads the future: row t of the unfold only involves
  // inputs <= t, so perturbing the last input row leaves all earlier rows.
  Tensor a = Tensor::constant(x);
  Mat u1 = ad::unfold_time(a, 3, 1, ad::PadMode::kCausal).value();
  Mat x2 = x;
  x2.row(7).array() += 5.0;
  Mat u2 = ad::unfold_time(Tensor::constant(x2), 3, 1, ad::PadMode::kCausal).value();
  CHECK((u1.topRows(7) - u2.topRows(7)).norm() == 0.0);
}

TEST_CASE("conv_cols_fixed matches a direct loop and differentiates") {
  Rng rng(19);
  Mat x = rng.normal_mat(9, 2);
  std::vector<double> k{0.25, 0.5, 0.25};

  Mat y = ad::conv_cols_fixed(Tensor::constant(x), k).value();
  for (int t = 0; t < 7; ++t)
    for (int j = 0; j < 2; ++j) {
      double ref = 0.25 * x(t, j) + 0.5 * x(t + 1, j) + 0.25 * x(t + 2, j);
      CHECK(y(t, j) == Catch::Approx(ref).epsilon(1e-12));
    }

  CHECK(grad_check(
            [&](const Tensor& t) { return ad::mean_all(ad::square(ad::conv_cols_fixed(t, k))); },
            x) < 1e-6);
}

TEST_CASE("straight-through estimator passes gradients unchanged") {
  Rng rng(23);
  Mat z0 = rng.normal_mat(3, 2);
  Mat q0 = rng.normal_mat(3, 2);

  Tensor z = Tensor::leaf(z0, true);
  Tensor q = ad::straight_through(z, q0);
  CHECK((q.value() - q0).norm() == 0.0);
  Tensor loss = ad::mean_all(ad::square(q));
  ad::backward(loss);
  // dL/dz equals dL/dq = 2 q0 / N under the straight-through rule
  Mat expect = 2.0 * q0 / q0.size();
  CHECK((z.grad() - expect).norm() < 1e-12);
}

TEST_CASE("layers: linear, conv1d, attention, FFT block differentiate") {
  Rng rng(29);
  nn::ParamStore ps;
  nn::Linear lin(ps, rng, "lin", 4, 3);
  nn::Conv1d conv(ps, rng, "conv", 4, 5, 3, ad::PadMode::kSame);
  nn::FFTBlock block(ps, rng, "blk", 4, 2, 8, 3);

  Mat x0 = rng.normal_mat(6, 4);
  CHECK(grad_check([&](const Tensor& t) { return ad::mean_all(ad::square(lin(t))); }, x0) < 1e-6);
  CHECK(grad_check([&](const Tensor& t) { return ad::mean_all(ad::square(conv(t))); }, x0) < 1e-6);
  CHECK(grad_check([&](const Tensor& t) { return ad::mean_all(ad::square(block(t, nullptr))); },
                   x0) < 1e-5);

  // parameter gradients flow too
  ps.zero_grad();
  Tensor y = ad::mean_all(ad::square(block(lin(ad::vtanh(conv(Tensor::leaf(x0, false)))), nullptr)));
  ad::backward(y);
  int with_grad = 0;
  for (const auto& [name, t] : ps.all())
    if (t.node()->grad_ready && t.grad().norm() > 0) ++with_grad;
  CHECK(with_grad == static_cast<int>(ps.size()));
}

TEST_CASE("Adam reduces a quadratic") {
  Rng rng(31);
  nn::ParamStore ps;
  Tensor w = ps.add("w", rng.normal_mat(4, 4));
  nn::Adam opt(ps, {.lr = 0.05});
  Mat target = rng.normal_mat(4, 4);
  double first = 0, last = 0;
  for (int i = 0; i < 200; ++i) {
    ps.zero_grad();
    Tensor loss = ad::mean_all(ad::square(ad::sub(w, Tensor::constant(target))));
    if (i == 0) first = loss.item();
    last = loss.item();
    ad::backward(loss);
    opt.step();
  }
  CHECK(last < first * 1e-3);
}

TEST_CASE("NoGrad suppresses graph construction") {
  Rng rng(37);
  Mat x = rng.normal_mat(3, 3);
  Tensor w = Tensor::leaf(x, true);
  ad::NoGrad ng;
  Tensor y = ad::mean_all(ad::square(w));
  CHECK(!y.requires_grad());
}
