#pragma once

#include <cblas.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pf/errors.hpp"
#include "pf/pairing.hpp"
#include "pf/random.hpp"

namespace pf {

// conv(5x5, same) → relu → maxpool2 → conv(5x5, same) → relu → maxpool2 →
// fc → relu → dropout → fc → softmax
struct CnnConfig {
  int in_channels = 2;
  int in_h = 128;
  int in_w = 128;
  int kernel = 5;
  int conv1_filters = 32;
  int conv2_filters = 64;
  int fc1_units = 1024;
  int num_classes = 2;
  double dropout_rate = 0.5;  // drop probability after fc1
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int batch_size = 64;
  int epochs = 5;
  std::uint64_t rng_seed = 42;
  int max_steps = 0;            // 0 = unlimited
  double train_acc_target = 0;  // stop once reached (0 = off)
  double val_acc_target = 0;    // stop once reached (0 = off)

  int pool1_h() const { return in_h / 2; }
  int pool1_w() const { return in_w / 2; }
  int pool2_h() const { return in_h / 4; }
  int pool2_w() const { return in_w / 4; }
  int flatten_size() const { return conv2_filters * pool2_h() * pool2_w(); }
};

template <typename T>
struct CnnParams {
  std::vector<T> conv1_w, conv1_b;  // F1×(C·K·K), F1
  std::vector<T> conv2_w, conv2_b;  // F2×(F1·K·K), F2
  std::vector<T> fc1_w, fc1_b;      // U×D, U
  std::vector<T> fc2_w, fc2_b;      // classes×U, classes

  template <typename Fn>
  void for_each(Fn&& fn) {
    fn(conv1_w); fn(conv1_b); fn(conv2_w); fn(conv2_b);
    fn(fc1_w); fn(fc1_b); fn(fc2_w); fn(fc2_b);
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    fn(conv1_w); fn(conv1_b); fn(conv2_w); fn(conv2_b);
    fn(fc1_w); fn(fc1_b); fn(fc2_w); fn(fc2_b);
  }

  bool all_finite() const {
    bool ok = true;
    for_each([&](const std::vector<T>& a) {
      for (T v : a)
        if (!std::isfinite(static_cast<double>(v))) ok = false;
    });
    return ok;
  }
};

template <typename T>
struct AdamState {
  CnnParams<T> m;
  CnnParams<T> v;
  std::uint64_t t = 0;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;
};

struct TrainReport {
  std::vector<EpochStats> epochs;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  int steps = 0;
};

namespace detail {

inline void gemm(CBLAS_TRANSPOSE ta, CBLAS_TRANSPOSE tb, int m, int n, int k,
                 float alpha, const float* a, int lda, const float* b, int ldb,
                 float beta, float* c, int ldc) {
  cblas_sgemm(CblasRowMajor, ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
inline void gemm(CBLAS_TRANSPOSE ta, CBLAS_TRANSPOSE tb, int m, int n, int k,
                 double alpha, const double* a, int lda, const double* b,
                 int ldb, double beta, double* c, int ldc) {
  cblas_dgemm(CblasRowMajor, ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

// input C×H×W (row-major) → col (C·K·K)×(H·W), symmetric zero padding K/2
template <typename T>
void im2col(const T* input, int channels, int h, int w, int k, T* col) {
  int pad = k / 2;
  for (int c = 0; c < channels; ++c) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        T* dst = col + (static_cast<std::size_t>(c) * k * k + ky * k + kx) *
                           (static_cast<std::size_t>(h) * w);
        for (int y = 0; y < h; ++y) {
          int sy = y + ky - pad;
          if (sy < 0 || sy >= h) {
            std::fill(dst + static_cast<std::size_t>(y) * w,
                      dst + static_cast<std::size_t>(y + 1) * w, T(0));
            continue;
          }
          const T* src_row = input + (static_cast<std::size_t>(c) * h + sy) * w;
          for (int x = 0; x < w; ++x) {
            int sx = x + kx - pad;
            dst[static_cast<std::size_t>(y) * w + x] =
                (sx < 0 || sx >= w) ? T(0) : src_row[sx];
          }
        }
      }
    }
  }
}

template <typename T>
void col2im(const T* col, int channels, int h, int w, int k, T* input_grad) {
  int pad = k / 2;
  std::fill(input_grad, input_grad + static_cast<std::size_t>(channels) * h * w, T(0));
  for (int c = 0; c < channels; ++c) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const T* src = col + (static_cast<std::size_t>(c) * k * k + ky * k + kx) *
                                 (static_cast<std::size_t>(h) * w);
        for (int y = 0; y < h; ++y) {
          int sy = y + ky - pad;
          if (sy < 0 || sy >= h) continue;
          T* dst_row = input_grad + (static_cast<std::size_t>(c) * h + sy) * w;
          for (int x = 0; x < w; ++x) {
            int sx = x + kx - pad;
            if (sx >= 0 && sx < w) dst_row[sx] += src[static_cast<std::size_t>(y) * w + x];
          }
        }
      }
    }
  }
}

// 2×2 stride-2 max pool; idx stores the input offset chosen per output cell
template <typename T>
void maxpool(const T* in, int channels, int h, int w, T* out, std::uint32_t* idx) {
  int oh = h / 2, ow = w / 2;
  for (int c = 0; c < channels; ++c) {
    const T* plane = in + static_cast<std::size_t>(c) * h * w;
    T* oplane = out + static_cast<std::size_t>(c) * oh * ow;
    std::uint32_t* iplane = idx + static_cast<std::size_t>(c) * oh * ow;
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        std::uint32_t base = static_cast<std::uint32_t>((2 * y) * w + 2 * x);
        std::uint32_t best = base;
        T bv = plane[base];
        const std::uint32_t cand[3] = {base + 1, base + static_cast<std::uint32_t>(w),
                                       base + static_cast<std::uint32_t>(w) + 1};
        for (std::uint32_t ci : cand) {
          if (plane[ci] > bv) {
            bv = plane[ci];
            best = ci;
          }
        }
        oplane[static_cast<std::size_t>(y) * ow + x] = bv;
        iplane[static_cast<std::size_t>(y) * ow + x] =
            static_cast<std::uint32_t>(c * h * w) + best;
      }
    }
  }
}

}  // namespace detail

template <typename T>
struct ForwardCache {
  std::vector<T> input;      // N×C×H×W
  std::vector<T> conv1;      // post-relu, N×F1×H×W
  std::vector<T> pool1;      // N×F1×(H/2)×(W/2)
  std::vector<std::uint32_t> pool1_idx;
  std::vector<T> conv2;      // post-relu, N×F2×(H/2)×(W/2)
  std::vector<T> pool2;      // flatten, N×D
  std::vector<std::uint32_t> pool2_idx;
  std::vector<T> fc1;        // post-relu, N×U
  std::vector<T> drop_mask;  // 0 or 1/keep, N×U (all-ones when not training)
  std::vector<T> fc1_dropped;
  std::vector<T> probs;      // N×classes
  int n = 0;
};

// He-scaled normal init for conv/fc weights, zero biases.
template <typename T>
CnnParams<T> init_params(const CnnConfig& cfg, Rng& rng) {
  CnnParams<T> p;
  auto fill_normal = [&](std::vector<T>& w, std::size_t n, double fan_in) {
    w.resize(n);
    double std_dev = std::sqrt(2.0 / fan_in);
    for (auto& v : w) v = static_cast<T>(rng.normal() * std_dev);
  };
  int ckk1 = cfg.in_channels * cfg.kernel * cfg.kernel;
  int ckk2 = cfg.conv1_filters * cfg.kernel * cfg.kernel;
  fill_normal(p.conv1_w, static_cast<std::size_t>(cfg.conv1_filters) * ckk1, ckk1);
  p.conv1_b.assign(cfg.conv1_filters, T(0));
  fill_normal(p.conv2_w, static_cast<std::size_t>(cfg.conv2_filters) * ckk2, ckk2);
  p.conv2_b.assign(cfg.conv2_filters, T(0));
  fill_normal(p.fc1_w, static_cast<std::size_t>(cfg.fc1_units) * cfg.flatten_size(),
              cfg.flatten_size());
  p.fc1_b.assign(cfg.fc1_units, T(0));
  fill_normal(p.fc2_w, static_cast<std::size_t>(cfg.num_classes) * cfg.fc1_units,
              cfg.fc1_units);
  p.fc2_b.assign(cfg.num_classes, T(0));
  return p;
}

// Forward pass over a batch (input N×C×H×W row-major). When training,
// dropout masks are drawn from `rng`; at inference no dropout is applied.
template <typename T>
ForwardCache<T> forward(const CnnParams<T>& params, const std::vector<T>& batch,
                        int n, const CnnConfig& cfg, bool training, Rng* rng) {
  const int k = cfg.kernel;
  const int h = cfg.in_h, w = cfg.in_w;
  const std::size_t hw = static_cast<std::size_t>(h) * w;
  if (batch.size() != static_cast<std::size_t>(n) * cfg.in_channels * hw)
    throw ShapeMismatchError("forward: batch size does not match config dims");
  if (params.fc1_w.size() !=
      static_cast<std::size_t>(cfg.fc1_units) * cfg.flatten_size())
    throw ShapeMismatchError("forward: params do not match config");

  ForwardCache<T> cache;
  cache.n = n;
  cache.input = batch;

  const int f1 = cfg.conv1_filters, f2 = cfg.conv2_filters;
  const int ckk1 = cfg.in_channels * k * k;
  const int ckk2 = f1 * k * k;
  const int h2 = cfg.pool1_h(), w2 = cfg.pool1_w();
  const std::size_t hw2 = static_cast<std::size_t>(h2) * w2;
  const int d = cfg.flatten_size();
  const int u = cfg.fc1_units;
  const int classes = cfg.num_classes;

  cache.conv1.resize(static_cast<std::size_t>(n) * f1 * hw);
  cache.pool1.resize(static_cast<std::size_t>(n) * f1 * hw / 4);
  cache.pool1_idx.resize(cache.pool1.size());
  cache.conv2.resize(static_cast<std::size_t>(n) * f2 * hw2);
  cache.pool2.resize(static_cast<std::size_t>(n) * d);
  cache.pool2_idx.resize(cache.pool2.size());

  std::vector<T> col(std::max(static_cast<std::size_t>(ckk1) * hw,
                              static_cast<std::size_t>(ckk2) * hw2));

  for (int i = 0; i < n; ++i) {
    const T* img = batch.data() + static_cast<std::size_t>(i) * cfg.in_channels * hw;
    T* c1 = cache.conv1.data() + static_cast<std::size_t>(i) * f1 * hw;
    detail::im2col(img, cfg.in_channels, h, w, k, col.data());
    detail::gemm(CblasNoTrans, CblasNoTrans, f1, static_cast<int>(hw), ckk1, T(1),
                 params.conv1_w.data(), ckk1, col.data(), static_cast<int>(hw),
                 T(0), c1, static_cast<int>(hw));
    for (int f = 0; f < f1; ++f) {
      T bias = params.conv1_b[f];
      T* plane = c1 + static_cast<std::size_t>(f) * hw;
      for (std::size_t px = 0; px < hw; ++px)
        plane[px] = std::max(plane[px] + bias, T(0));
    }
    T* p1 = cache.pool1.data() + static_cast<std::size_t>(i) * f1 * hw / 4;
    std::uint32_t* p1i = cache.pool1_idx.data() + static_cast<std::size_t>(i) * f1 * hw / 4;
    detail::maxpool(c1, f1, h, w, p1, p1i);

    T* c2 = cache.conv2.data() + static_cast<std::size_t>(i) * f2 * hw2;
    detail::im2col(p1, f1, h2, w2, k, col.data());
    detail::gemm(CblasNoTrans, CblasNoTrans, f2, static_cast<int>(hw2), ckk2, T(1),
                 params.conv2_w.data(), ckk2, col.data(), static_cast<int>(hw2),
                 T(0), c2, static_cast<int>(hw2));
    for (int f = 0; f < f2; ++f) {
      T bias = params.conv2_b[f];
      T* plane = c2 + static_cast<std::size_t>(f) * hw2;
      for (std::size_t px = 0; px < hw2; ++px)
        plane[px] = std::max(plane[px] + bias, T(0));
    }
    T* p2 = cache.pool2.data() + static_cast<std::size_t>(i) * d;
    std::uint32_t* p2i = cache.pool2_idx.data() + static_cast<std::size_t>(i) * d;
    detail::maxpool(c2, f2, h2, w2, p2, p2i);
  }

  // fc1: X(N×D)·W1ᵀ(D×U) + b, relu
  cache.fc1.assign(static_cast<std::size_t>(n) * u, T(0));
  detail::gemm(CblasNoTrans, CblasTrans, n, u, d, T(1), cache.pool2.data(), d,
               params.fc1_w.data(), d, T(0), cache.fc1.data(), u);
  for (int i = 0; i < n; ++i) {
    T* row = cache.fc1.data() + static_cast<std::size_t>(i) * u;
    for (int j = 0; j < u; ++j) row[j] = std::max(row[j] + params.fc1_b[j], T(0));
  }

  cache.drop_mask.assign(cache.fc1.size(), T(1));
  if (training && cfg.dropout_rate > 0.0) {
    T keep_inv = static_cast<T>(1.0 / (1.0 - cfg.dropout_rate));
    for (auto& mval : cache.drop_mask)
      mval = (rng && rng->uniform() < cfg.dropout_rate) ? T(0) : keep_inv;
  }
  cache.fc1_dropped.resize(cache.fc1.size());
  for (std::size_t i = 0; i < cache.fc1.size(); ++i)
    cache.fc1_dropped[i] = cache.fc1[i] * cache.drop_mask[i];

  // fc2 + softmax
  cache.probs.assign(static_cast<std::size_t>(n) * classes, T(0));
  detail::gemm(CblasNoTrans, CblasTrans, n, classes, u, T(1),
               cache.fc1_dropped.data(), u, params.fc2_w.data(), u, T(0),
               cache.probs.data(), classes);
  for (int i = 0; i < n; ++i) {
    T* row = cache.probs.data() + static_cast<std::size_t>(i) * classes;
    T mx = row[0] + params.fc2_b[0];
    for (int c = 0; c < classes; ++c) {
      row[c] += params.fc2_b[c];
      mx = std::max(mx, row[c]);
    }
    T sum = T(0);
    for (int c = 0; c < classes; ++c) {
      row[c] = std::exp(row[c] - mx);
      sum += row[c];
    }
    for (int c = 0; c < classes; ++c) row[c] /= sum;
  }
  return cache;
}

// Mean softmax cross-entropy and full backprop. Dropout masks come from
// `rng` via the forward pass.
template <typename T>
T loss_and_grads(const CnnParams<T>& params, const std::vector<T>& batch, int n,
                 const std::vector<int>& labels, const CnnConfig& cfg, Rng& rng,
                 CnnParams<T>& grads, ForwardCache<T>* cache_out = nullptr) {
  if (static_cast<int>(labels.size()) != n || n == 0)
    throw ShapeMismatchError("loss_and_grads: label count != batch size");
  ForwardCache<T> cache = forward(params, batch, n, cfg, true, &rng);

  const int k = cfg.kernel;
  const int h = cfg.in_h, w = cfg.in_w;
  const std::size_t hw = static_cast<std::size_t>(h) * w;
  const int f1 = cfg.conv1_filters, f2 = cfg.conv2_filters;
  const int ckk1 = cfg.in_channels * k * k;
  const int ckk2 = f1 * k * k;
  const int h2 = cfg.pool1_h(), w2 = cfg.pool1_w();
  const std::size_t hw2 = static_cast<std::size_t>(h2) * w2;
  const int d = cfg.flatten_size();
  const int u = cfg.fc1_units;
  const int classes = cfg.num_classes;

  T loss = T(0);
  for (int i = 0; i < n; ++i) {
    T p = cache.probs[static_cast<std::size_t>(i) * classes + labels[i]];
    loss -= std::log(std::max(p, std::numeric_limits<T>::min()));
  }
  loss /= static_cast<T>(n);

  grads.conv1_w.assign(params.conv1_w.size(), T(0));
  grads.conv1_b.assign(params.conv1_b.size(), T(0));
  grads.conv2_w.assign(params.conv2_w.size(), T(0));
  grads.conv2_b.assign(params.conv2_b.size(), T(0));
  grads.fc1_w.assign(params.fc1_w.size(), T(0));
  grads.fc1_b.assign(params.fc1_b.size(), T(0));
  grads.fc2_w.assign(params.fc2_w.size(), T(0));
  grads.fc2_b.assign(params.fc2_b.size(), T(0));

  // dlogits = (probs - onehot)/n
  std::vector<T> dlogits(cache.probs);
  for (int i = 0; i < n; ++i)
    dlogits[static_cast<std::size_t>(i) * classes + labels[i]] -= T(1);
  for (auto& v : dlogits) v /= static_cast<T>(n);

  detail::gemm(CblasTrans, CblasNoTrans, classes, u, n, T(1), dlogits.data(),
               classes, cache.fc1_dropped.data(), u, T(0), grads.fc2_w.data(), u);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < classes; ++c)
      grads.fc2_b[c] += dlogits[static_cast<std::size_t>(i) * classes + c];

  std::vector<T> dfc1(static_cast<std::size_t>(n) * u);
  detail::gemm(CblasNoTrans, CblasNoTrans, n, u, classes, T(1), dlogits.data(),
               classes, params.fc2_w.data(), u, T(0), dfc1.data(), u);
  for (std::size_t i = 0; i < dfc1.size(); ++i) {
    dfc1[i] *= cache.drop_mask[i];
    if (cache.fc1[i] <= T(0)) dfc1[i] = T(0);
  }

  detail::gemm(CblasTrans, CblasNoTrans, u, d, n, T(1), dfc1.data(), u,
               cache.pool2.data(), d, T(0), grads.fc1_w.data(), d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < u; ++j)
      grads.fc1_b[j] += dfc1[static_cast<std::size_t>(i) * u + j];

  std::vector<T> dflat(static_cast<std::size_t>(n) * d);
  detail::gemm(CblasNoTrans, CblasNoTrans, n, d, u, T(1), dfc1.data(), u,
               params.fc1_w.data(), d, T(0), dflat.data(), d);

  std::vector<T> col(std::max(static_cast<std::size_t>(ckk1) * hw,
                              static_cast<std::size_t>(ckk2) * hw2));
  std::vector<T> dconv2(static_cast<std::size_t>(f2) * hw2);
  std::vector<T> dcol2(static_cast<std::size_t>(ckk2) * hw2);
  std::vector<T> dpool1(static_cast<std::size_t>(f1) * hw / 4);
  std::vector<T> dconv1(static_cast<std::size_t>(f1) * hw);

  for (int i = 0; i < n; ++i) {
    // pool2 backward (scatter) + relu through conv2
    std::fill(dconv2.begin(), dconv2.end(), T(0));
    const std::uint32_t* p2i = cache.pool2_idx.data() + static_cast<std::size_t>(i) * d;
    const T* df = dflat.data() + static_cast<std::size_t>(i) * d;
    const T* c2 = cache.conv2.data() + static_cast<std::size_t>(i) * f2 * hw2;
    for (int j = 0; j < d; ++j)
      if (c2[p2i[j]] > T(0)) dconv2[p2i[j]] += df[j];

    // conv2 backward
    const T* p1 = cache.pool1.data() + static_cast<std::size_t>(i) * f1 * hw / 4;
    detail::im2col(p1, f1, h2, w2, k, col.data());
    detail::gemm(CblasNoTrans, CblasTrans, f2, ckk2, static_cast<int>(hw2), T(1),
                 dconv2.data(), static_cast<int>(hw2), col.data(),
                 static_cast<int>(hw2), T(1), grads.conv2_w.data(), ckk2);
    for (int f = 0; f < f2; ++f) {
      T s = T(0);
      const T* plane = dconv2.data() + static_cast<std::size_t>(f) * hw2;
      for (std::size_t px = 0; px < hw2; ++px) s += plane[px];
      grads.conv2_b[f] += s;
    }
    detail::gemm(CblasTrans, CblasNoTrans, ckk2, static_cast<int>(hw2), f2, T(1),
                 params.conv2_w.data(), ckk2, dconv2.data(),
                 static_cast<int>(hw2), T(0), dcol2.data(), static_cast<int>(hw2));
    detail::col2im(dcol2.data(), f1, h2, w2, k, dpool1.data());

    // pool1 backward + relu through conv1
    std::fill(dconv1.begin(), dconv1.end(), T(0));
    const std::uint32_t* p1i = cache.pool1_idx.data() + static_cast<std::size_t>(i) * f1 * hw / 4;
    const T* c1 = cache.conv1.data() + static_cast<std::size_t>(i) * f1 * hw;
    for (std::size_t j = 0; j < static_cast<std::size_t>(f1) * hw / 4; ++j)
      if (c1[p1i[j]] > T(0)) dconv1[p1i[j]] += dpool1[j];

    // conv1 backward (weights only; input gradient is not needed)
    const T* img = cache.input.data() + static_cast<std::size_t>(i) * cfg.in_channels * hw;
    detail::im2col(img, cfg.in_channels, h, w, k, col.data());
    detail::gemm(CblasNoTrans, CblasTrans, f1, ckk1, static_cast<int>(hw), T(1),
                 dconv1.data(), static_cast<int>(hw), col.data(),
                 static_cast<int>(hw), T(1), grads.conv1_w.data(), ckk1);
    for (int f = 0; f < f1; ++f) {
      T s = T(0);
      const T* plane = dconv1.data() + static_cast<std::size_t>(f) * hw;
      for (std::size_t px = 0; px < hw; ++px) s += plane[px];
      grads.conv1_b[f] += s;
    }
  }

  if (cache_out) *cache_out = std::move(cache);
  return loss;
}

// Loss under a fixed dropout draw; the finite-difference harness calls this
// with the same seed so every evaluation sees the identical mask.
template <typename T>
T loss_only(const CnnParams<T>& params, const std::vector<T>& batch, int n,
            const std::vector<int>& labels, const CnnConfig& cfg,
            std::uint64_t dropout_seed) {
  Rng rng(dropout_seed);
  ForwardCache<T> cache = forward(params, batch, n, cfg, true, &rng);
  T loss = T(0);
  for (int i = 0; i < n; ++i) {
    T p = cache.probs[static_cast<std::size_t>(i) * cfg.num_classes + labels[i]];
    loss -= std::log(std::max(p, std::numeric_limits<T>::min()));
  }
  return loss / static_cast<T>(n);
}

// Standard bias-corrected Adam update; increments the step counter.
template <typename T>
void adam_step(CnnParams<T>& params, const CnnParams<T>& grads,
               AdamState<T>& state, const CnnConfig& cfg) {
  if (state.t == 0) {
    state.m = params;
    state.m.for_each([](std::vector<T>& a) { std::fill(a.begin(), a.end(), T(0)); });
    state.v = state.m;
  }
  state.t += 1;
  T b1 = static_cast<T>(cfg.beta1), b2 = static_cast<T>(cfg.beta2);
  T lr = static_cast<T>(cfg.learning_rate), eps = static_cast<T>(cfg.epsilon);
  T bc1 = static_cast<T>(1.0 - std::pow(cfg.beta1, static_cast<double>(state.t)));
  T bc2 = static_cast<T>(1.0 - std::pow(cfg.beta2, static_cast<double>(state.t)));

  std::vector<T>* ps[8];
  const std::vector<T>* gs[8];
  std::vector<T>* ms[8];
  std::vector<T>* vs[8];
  {
    int i = 0;
    params.for_each([&](std::vector<T>& a) { ps[i++] = &a; });
    i = 0;
    grads.for_each([&](const std::vector<T>& a) { gs[i++] = &a; });
    i = 0;
    state.m.for_each([&](std::vector<T>& a) { ms[i++] = &a; });
    i = 0;
    state.v.for_each([&](std::vector<T>& a) { vs[i++] = &a; });
  }
  for (int a = 0; a < 8; ++a) {
    if (ps[a]->size() != gs[a]->size())
      throw ShapeMismatchError("adam_step: gradient shape mismatch");
    T* p = ps[a]->data();
    const T* g = gs[a]->data();
    T* m = ms[a]->data();
    T* v = vs[a]->data();
    std::size_t len = ps[a]->size();
    for (std::size_t j = 0; j < len; ++j) {
      m[j] = b1 * m[j] + (T(1) - b1) * g[j];
      v[j] = b2 * v[j] + (T(1) - b2) * g[j] * g[j];
      T mhat = m[j] / bc1;
      T vhat = v[j] / bc2;
      p[j] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

struct Prediction {
  int label = 0;
  double probability = 0.0;  // probability of the predicted label
  double prob_similar = 0.0;
};

inline std::vector<float> tensor_to_batch_input(const PairTensor& pair) {
  std::vector<float> input;
  input.reserve(pair.channel0.size() * 2);
  input.insert(input.end(), pair.channel0.begin(), pair.channel0.end());
  input.insert(input.end(), pair.channel1.begin(), pair.channel1.end());
  return input;
}

inline Prediction predict(const CnnParams<float>& params, const PairTensor& pair,
                          const CnnConfig& cfg) {
  std::vector<float> input = tensor_to_batch_input(pair);
  ForwardCache<float> cache = forward(params, input, 1, cfg, false, nullptr);
  Prediction out;
  out.prob_similar = cache.probs[1];
  out.label = cache.probs[1] > cache.probs[0] ? 1 : 0;
  out.probability = cache.probs[out.label];
  return out;
}

// Seeded shuffle, stratified 9:1 split, minibatch Adam epochs. Deterministic
// given the seed. Throws InsufficientDataError on < 10 samples or one class.
std::pair<CnnParams<float>, TrainReport> train(
    const std::vector<PairSample>& dataset, const CnnConfig& cfg,
    AdamState<float>* state_out = nullptr);

}  // namespace pf
