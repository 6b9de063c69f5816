// Copyright 2026 The GLyDER Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glyder/rng.hpp"
#include "glyder/vec.hpp"

namespace glyder {

enum class ProblemKind { noisy_quadratic, logistic_regression, mlp_classifier };

// Analytic constants of a problem instance, populated only when they are
// actually known.  sigma is the per-oracle-call noise level (E|xi|^2 =
// sigma^2), R the initial optimality gap f(x0) - inf f, M a Lipschitz bound
// on f, and G an almost-sure bound on the noise norm.
struct ProblemConstants {
  std::optional<double> L;
  std::optional<double> sigma;
  std::optional<double> R;
  std::optional<double> M;
  std::optional<double> G;
};

// Selects which samples a stochastic oracle call sees: a freshly drawn
// i.i.d. batch (uniform with replacement, consuming the handle's rng stream),
// an explicit index list, or the whole dataset.
struct BatchSelector {
  enum class Kind { fresh_draw, fixed_indices, full_data };

  Kind kind = Kind::full_data;
  std::size_t fresh_size = 0;  // 0 means the problem's default batch size
  std::vector<std::size_t> indices;

  static BatchSelector fresh(std::size_t size = 0) {
    BatchSelector b;
    b.kind = Kind::fresh_draw;
    b.fresh_size = size;
    return b;
  }
  static BatchSelector fixed(std::vector<std::size_t> idx) {
    BatchSelector b;
    b.kind = Kind::fixed_indices;
    b.indices = std::move(idx);
    return b;
  }
  static BatchSelector full() { return BatchSelector{}; }
};

namespace detail {

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^t) without overflow for large |t|.
inline double softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

using IndexList = std::vector<std::size_t>;

// Immutable per-instance data plus the oracle math.  One implementation per
// problem kind; ProblemHandle owns the mutable rng stream and batch plumbing.
class ProblemData {
 public:
  virtual ~ProblemData() = default;

  virtual ProblemKind kind() const = 0;
  virtual std::size_t dim() const = 0;
  // 0 means the oracle is generative (no finite dataset behind it).
  virtual std::size_t n_samples() const = 0;
  virtual std::size_t default_batch() const = 0;

  virtual double full_loss(const Vec& x) const = 0;
  virtual Vec full_grad(const Vec& x) const = 0;

  virtual double batch_loss(const Vec&, const IndexList&) const {
    throw std::logic_error("batch_loss: oracle has no dataset");
  }
  virtual Vec batch_grad(const Vec&, const IndexList&) const {
    throw std::logic_error("batch_grad: oracle has no dataset");
  }
  virtual Vec noisy_grad(const Vec&, RngStream&) const {
    throw std::logic_error("noisy_grad: oracle is dataset-backed");
  }

  // Hessian-vector product over the given samples (ignored by problems whose
  // Hessian does not depend on the batch).
  virtual Vec hvp(const Vec& x, const Vec& v, const IndexList& batch) const = 0;
};

// ---------------------------------------------------------------------------
// f(x) = (1/2) x^T diag(a) x with additive zero-mean gradient noise.

class QuadraticData final : public ProblemData {
 public:
  QuadraticData(Vec eigenvalues, double sigma, NoiseModel noise)
      : eig_(std::move(eigenvalues)), sigma_(sigma), noise_(noise) {}

  ProblemKind kind() const override { return ProblemKind::noisy_quadratic; }
  std::size_t dim() const override { return eig_.size(); }
  std::size_t n_samples() const override { return 0; }
  std::size_t default_batch() const override { return 1; }

  double full_loss(const Vec& x) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < eig_.size(); ++i) s += eig_[i] * x[i] * x[i];
    return 0.5 * s;
  }

  Vec full_grad(const Vec& x) const override {
    Vec g(x.size());
    for (std::size_t i = 0; i < eig_.size(); ++i) g[i] = eig_[i] * x[i];
    return g;
  }

  Vec noisy_grad(const Vec& x, RngStream& rng) const override {
    Vec g = full_grad(x);
    if (sigma_ > 0.0) {
      const Vec xi = (noise_ == NoiseModel::gaussian)
                         ? rng.gaussian_noise(g.size(), sigma_)
                         : rng.sphere_noise(g.size(), sigma_);
      add_inplace(g, xi);
    }
    return g;
  }

  Vec hvp(const Vec&, const Vec& v, const IndexList&) const override {
    Vec out(v.size());
    for (std::size_t i = 0; i < eig_.size(); ++i) out[i] = eig_[i] * v[i];
    return out;
  }

  double max_eigenvalue() const { return *std::max_element(eig_.begin(), eig_.end()); }
  double sigma() const { return sigma_; }
  NoiseModel noise_model() const { return noise_; }

 private:
  Vec eig_;
  double sigma_;
  NoiseModel noise_;
};

// ---------------------------------------------------------------------------
// Binary logistic regression on a synthetic near-separable dataset.

class LogisticData final : public ProblemData {
 public:
  LogisticData(std::size_t dim, std::size_t n_samples, std::size_t batch,
               std::uint64_t seed)
      : dim_(dim), batch_(batch) {
    RngStream rng = RngStream::derive(seed, 0x1061571C);
    // A random unit normal defines the ground-truth separator; points too
    // close to the boundary are resampled so the data has a margin, then a
    // small fraction of labels is flipped so the optimum stays finite.
    Vec w_star(dim);
    rng.fill_normal(w_star);
    scale(w_star, 1.0 / std::sqrt(norm_sq(w_star)));

    xs_.reserve(n_samples);
    ys_.reserve(n_samples);
    constexpr double kMargin = 0.25;
    constexpr double kFlipProb = 0.05;
    for (std::size_t i = 0; i < n_samples; ++i) {
      Vec x(dim);
      double z = 0.0;
      do {
        rng.fill_normal(x);
        z = dot(w_star, x);
      } while (std::abs(z) < kMargin);
      int y = z > 0.0 ? 1 : -1;
      if (rng.uniform01() < kFlipProb) y = -y;
      xs_.push_back(std::move(x));
      ys_.push_back(y);
    }
  }

  ProblemKind kind() const override { return ProblemKind::logistic_regression; }
  std::size_t dim() const override { return dim_; }
  std::size_t n_samples() const override { return xs_.size(); }
  std::size_t default_batch() const override { return batch_; }

  double batch_loss(const Vec& w, const IndexList& batch) const override {
    double s = 0.0;
    for (std::size_t i : batch)
      s += softplus(-static_cast<double>(ys_[i]) * dot(w, xs_[i]));
    return s / static_cast<double>(batch.size());
  }

  Vec batch_grad(const Vec& w, const IndexList& batch) const override {
    Vec g(dim_, 0.0);
    for (std::size_t i : batch) {
      const double y = static_cast<double>(ys_[i]);
      const double coef = -y * sigmoid(-y * dot(w, xs_[i]));
      axpy(coef, xs_[i], g);
    }
    scale(g, 1.0 / static_cast<double>(batch.size()));
    return g;
  }

  double full_loss(const Vec& w) const override { return batch_loss(w, all_indices()); }
  Vec full_grad(const Vec& w) const override { return batch_grad(w, all_indices()); }

  // Exact product (1/|b|) sum_i s_i (1 - s_i) <x_i, v> x_i with
  // s_i = sigmoid(<w, x_i>); symmetric by construction.
  Vec hvp(const Vec& w, const Vec& v, const IndexList& batch) const override {
    const IndexList& b = batch.empty() ? all_indices() : batch;
    Vec out(dim_, 0.0);
    for (std::size_t i : b) {
      const double s = sigmoid(dot(w, xs_[i]));
      axpy(s * (1.0 - s) * dot(xs_[i], v), xs_[i], out);
    }
    scale(out, 1.0 / static_cast<double>(b.size()));
    return out;
  }

 private:
  const IndexList& all_indices() const {
    if (all_.size() != xs_.size()) {
      all_.resize(xs_.size());
      std::iota(all_.begin(), all_.end(), std::size_t{0});
    }
    return all_;
  }

  std::size_t dim_;
  std::size_t batch_;
  std::vector<Vec> xs_;
  std::vector<int> ys_;
  mutable IndexList all_;
};

// ---------------------------------------------------------------------------
// Fully connected tanh network with softmax cross-entropy on Gaussian blobs.
// Gradients are hand-written backprop; Hessian-vector products fall back to a
// central finite difference of the batch gradient.

class MlpData final : public ProblemData {
 public:
  MlpData(std::vector<std::size_t> layers, std::size_t n_samples,
          std::size_t batch, std::uint64_t seed)
      : layers_(std::move(layers)), batch_(batch) {
    if (layers_.size() < 2)
      throw std::invalid_argument("mlp: need at least input and output layers");
    if (layers_.front() < 2)
      throw std::invalid_argument("mlp: input width must be >= 2");
    if (layers_.back() < 2)
      throw std::invalid_argument("mlp: output width (class count) must be >= 2");

    dim_ = 0;
    for (std::size_t l = 0; l + 1 < layers_.size(); ++l)
      dim_ += layers_[l + 1] * layers_[l] + layers_[l + 1];

    // One Gaussian blob per class, centers on a circle in the first two input
    // coordinates.  The blobs overlap on purpose: the Bayes error is nonzero,
    // so per-sample gradients stay noisy even at the optimum.
    RngStream rng = RngStream::derive(seed, 0xB10B5);
    const std::size_t classes = layers_.back();
    const std::size_t in_dim = layers_.front();
    constexpr double kRadius = 1.5;
    const double offset = rng.uniform01() * 2.0 * std::numbers::pi;
    std::vector<Vec> centers(classes, Vec(in_dim, 0.0));
    for (std::size_t c = 0; c < classes; ++c) {
      const double a = offset + 2.0 * std::numbers::pi * static_cast<double>(c) /
                                    static_cast<double>(classes);
      centers[c][0] = kRadius * std::cos(a);
      centers[c][1] = kRadius * std::sin(a);
    }
    xs_.reserve(n_samples);
    ys_.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
      const std::size_t c = i % classes;
      Vec x(in_dim);
      rng.fill_normal(x);
      add_inplace(x, centers[c]);
      xs_.push_back(std::move(x));
      ys_.push_back(c);
    }

    // He-style init, biases zero; exposed through initial_weights().
    init_ = Vec(dim_, 0.0);
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
      const std::size_t fan_in = layers_[l];
      const std::size_t n_w = layers_[l + 1] * layers_[l];
      const double sd = 1.0 / std::sqrt(static_cast<double>(fan_in));
      for (std::size_t k = 0; k < n_w; ++k) init_[off + k] = sd * rng.normal();
      off += n_w + layers_[l + 1];
    }
  }

  ProblemKind kind() const override { return ProblemKind::mlp_classifier; }
  std::size_t dim() const override { return dim_; }
  std::size_t n_samples() const override { return xs_.size(); }
  std::size_t default_batch() const override { return batch_; }
  const Vec& initial_weights() const { return init_; }

  double batch_loss(const Vec& theta, const IndexList& batch) const override {
    double s = 0.0;
    std::vector<Vec> acts;
    for (std::size_t i : batch) s += sample_loss(theta, i, &acts);
    return s / static_cast<double>(batch.size());
  }

  Vec batch_grad(const Vec& theta, const IndexList& batch) const override {
    Vec g(dim_, 0.0);
    std::vector<Vec> acts;
    Vec delta, next_delta;
    for (std::size_t i : batch) {
      sample_loss(theta, i, &acts);
      // Output delta: softmax(logits) - onehot(label).
      const Vec& logits = acts.back();
      delta = softmax(logits);
      delta[ys_[i]] -= 1.0;
      // Walk layers backwards accumulating dW, db.
      for (std::size_t l = layers_.size() - 1; l-- > 0;) {
        const std::size_t rows = layers_[l + 1];
        const std::size_t cols = layers_[l];
        const Vec& a_in = acts[l];
        const std::size_t off = offset_of(l);
        for (std::size_t r = 0; r < rows; ++r) {
          const double dr = delta[r];
          double* wrow = &g[off + r * cols];
          for (std::size_t c = 0; c < cols; ++c) wrow[c] += dr * a_in[c];
          g[off + rows * cols + r] += dr;
        }
        if (l == 0) break;
        // delta for the previous layer: (W^T delta) * tanh'(z) with
        // tanh'(z) = 1 - a^2 on the stored activation a.
        next_delta.assign(cols, 0.0);
        const double* w = &theta[off];
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < cols; ++c)
            next_delta[c] += w[r * cols + c] * delta[r];
        for (std::size_t c = 0; c < cols; ++c)
          next_delta[c] *= 1.0 - a_in[c] * a_in[c];
        delta = next_delta;
      }
    }
    scale(g, 1.0 / static_cast<double>(batch.size()));
    return g;
  }

  double full_loss(const Vec& theta) const override {
    return batch_loss(theta, all_indices());
  }
  Vec full_grad(const Vec& theta) const override {
    return batch_grad(theta, all_indices());
  }

  // Central finite difference of the batch gradient along v.  The step is
  // scaled to the cube root of machine epsilon, balancing truncation against
  // cancellation for a twice-differentiable loss.
  Vec hvp(const Vec& theta, const Vec& v, const IndexList& batch) const override {
    const IndexList& b = batch.empty() ? all_indices() : batch;
    const double h = std::cbrt(std::numeric_limits<double>::epsilon()) *
                     (1.0 + std::sqrt(norm_sq(theta))) /
                     std::max(std::sqrt(norm_sq(v)), 1e-12);
    Vec plus(theta), minus(theta);
    axpy(h, v, plus);
    axpy(-h, v, minus);
    Vec out = batch_grad(plus, b);
    const Vec gm = batch_grad(minus, b);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = (out[i] - gm[i]) / (2.0 * h);
    return out;
  }

 private:
  std::size_t offset_of(std::size_t layer) const {
    std::size_t off = 0;
    for (std::size_t l = 0; l < layer; ++l)
      off += layers_[l + 1] * layers_[l] + layers_[l + 1];
    return off;
  }

  static Vec softmax(const Vec& logits) {
    Vec p(logits);
    const double m = *std::max_element(p.begin(), p.end());
    double z = 0.0;
    for (double& v : p) {
      v = std::exp(v - m);
      z += v;
    }
    for (double& v : p) v /= z;
    return p;
  }

  // Forward pass; fills acts with [input, hidden activations..., logits] and
  // returns the cross-entropy of the labelled sample.
  double sample_loss(const Vec& theta, std::size_t i, std::vector<Vec>* acts) const {
    acts->assign(layers_.size(), Vec());
    (*acts)[0] = xs_[i];
    for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
      const std::size_t rows = layers_[l + 1];
      const std::size_t cols = layers_[l];
      const std::size_t off = offset_of(l);
      Vec z(rows, 0.0);
      const Vec& a_in = (*acts)[l];
      for (std::size_t r = 0; r < rows; ++r) {
        const double* wrow = &theta[off + r * cols];
        double s = theta[off + rows * cols + r];
        for (std::size_t c = 0; c < cols; ++c) s += wrow[c] * a_in[c];
        z[r] = s;
      }
      const bool last = (l + 2 == layers_.size());
      if (!last)
        for (double& v : z) v = std::tanh(v);
      (*acts)[l + 1] = std::move(z);
    }
    const Vec& logits = acts->back();
    const double m = *std::max_element(logits.begin(), logits.end());
    double lse = 0.0;
    for (double v : logits) lse += std::exp(v - m);
    return m + std::log(lse) - logits[ys_[i]];
  }

  std::vector<std::size_t> layers_;
  std::size_t batch_;
  std::size_t dim_ = 0;
  std::vector<Vec> xs_;
  std::vector<std::size_t> ys_;
  Vec init_;
  mutable IndexList all_;

  const IndexList& all_indices() const {
    if (all_.size() != xs_.size()) {
      all_.resize(xs_.size());
      std::iota(all_.begin(), all_.end(), std::size_t{0});
    }
    return all_;
  }
};

}  // namespace detail

// A stochastic gradient set sampled at one point, together with a selector
// covering every sample the set touched (so curvature probes can reuse the
// exact same data).
struct GradientSet;

// Value-type handle over an immutable problem instance plus a mutable rng
// stream.  Copies share the instance data; each copy carries its own stream,
// so concurrent trials should work on distinct copies.
class ProblemHandle {
 public:
  ProblemHandle(std::shared_ptr<const detail::ProblemData> data, Vec x0,
                ProblemConstants constants, RngStream stream)
      : data_(std::move(data)),
        x0_(std::move(x0)),
        constants_(constants),
        stream_(stream) {}

  ProblemKind kind() const { return data_->kind(); }
  std::size_t dim() const { return data_->dim(); }
  std::size_t n_samples() const { return data_->n_samples(); }
  std::size_t default_batch() const { return data_->default_batch(); }
  const ProblemConstants& constants() const { return constants_; }
  const Vec& initial_point() const { return x0_; }

  // Moves the start point.  For the quadratic the optimality gap R is exact
  // and is recomputed; other problems keep R unset.
  void set_initial_point(Vec x0) {
    check_dim(x0, "set_initial_point");
    x0_ = std::move(x0);
    if (kind() == ProblemKind::noisy_quadratic) constants_.R = data_->full_loss(x0_);
  }

  double loss(const Vec& x, const BatchSelector& b = BatchSelector::full()) {
    check_dim(x, "loss");
    if (generative() || b.kind == BatchSelector::Kind::full_data)
      return data_->full_loss(x);
    return data_->batch_loss(x, materialize(b));
  }

  Vec full_grad(const Vec& x) const {
    check_dim(x, "full_grad");
    return data_->full_grad(x);
  }

  // One stochastic oracle call.  Generative problems add fresh noise to the
  // exact gradient on every call regardless of the selector; dataset problems
  // average per-sample gradients over the selected batch.
  Vec stochastic_grad(const Vec& x, const BatchSelector& b = BatchSelector::fresh()) {
    check_dim(x, "stochastic_grad");
    if (generative()) return data_->noisy_grad(x, stream_);
    return data_->batch_grad(x, materialize(b));
  }

  Vec hvp(const Vec& x, const Vec& v, const BatchSelector& b = BatchSelector::full()) {
    check_dim(x, "hvp");
    check_dim(v, "hvp");
    if (generative()) return data_->hvp(x, v, {});
    return data_->hvp(x, v, materialize(b));
  }

  GradientSet sample_gradient_set(const Vec& x, std::size_t count);

  // Resolves a selector to concrete sample indices, drawing from the stream
  // for fresh batches.  Returns an empty list for generative problems.
  std::vector<std::size_t> materialize(const BatchSelector& b) {
    if (generative()) return {};
    const std::size_t m = n_samples();
    switch (b.kind) {
      case BatchSelector::Kind::full_data: {
        std::vector<std::size_t> all(m);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return all;
      }
      case BatchSelector::Kind::fixed_indices: {
        if (b.indices.empty())
          throw std::invalid_argument("BatchSelector: empty fixed index list");
        for (std::size_t i : b.indices)
          if (i >= m) throw std::invalid_argument("BatchSelector: index out of range");
        return b.indices;
      }
      case BatchSelector::Kind::fresh_draw: {
        const std::size_t size = b.fresh_size == 0 ? default_batch() : b.fresh_size;
        std::vector<std::size_t> idx(size);
        for (std::size_t& i : idx) i = stream_.uniform_below(m);
        return idx;
      }
    }
    throw std::logic_error("BatchSelector: unknown kind");
  }

  bool generative() const { return data_->n_samples() == 0; }

  RngStream& stream() { return stream_; }
  void reset_stream(RngStream s) { stream_ = s; }

 private:
  void check_dim(const Vec& x, const char* where) const {
    if (x.size() != data_->dim())
      throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }

  std::shared_ptr<const detail::ProblemData> data_;
  Vec x0_;
  ProblemConstants constants_;
  RngStream stream_;
};

struct GradientSet {
  std::vector<Vec> grads;
  BatchSelector combined;
};

inline GradientSet ProblemHandle::sample_gradient_set(const Vec& x, std::size_t count) {
  if (count == 0)
    throw std::invalid_argument("sample_gradient_set: count must be >= 1");
  GradientSet out;
  out.grads.reserve(count);
  if (generative()) {
    for (std::size_t i = 0; i < count; ++i)
      out.grads.push_back(stochastic_grad(x));
    out.combined = BatchSelector::full();
    return out;
  }
  std::vector<std::size_t> union_idx;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::size_t> idx = materialize(BatchSelector::fresh());
    out.grads.push_back(data_->batch_grad(x, idx));
    union_idx.insert(union_idx.end(), idx.begin(), idx.end());
  }
  out.combined = BatchSelector::fixed(std::move(union_idx));
  return out;
}

// ---------------------------------------------------------------------------
// Factories.

// Diagonal quadratic with additive gradient noise.  Eigenvalues must be
// nonnegative with at least one strictly positive; L is the largest one.
// The start point is drawn standard normal from the seed and R = f(x0).
inline ProblemHandle make_noisy_quadratic(Vec eigenvalues, double sigma,
                                          std::uint64_t seed,
                                          NoiseModel noise = NoiseModel::gaussian) {
  if (eigenvalues.empty())
    throw std::invalid_argument("make_noisy_quadratic: empty eigenvalue list");
  double max_eig = 0.0;
  for (double e : eigenvalues) {
    if (e < 0.0)
      throw std::invalid_argument(
          "make_noisy_quadratic: negative eigenvalue (problem must be smooth "
          "and bounded below)");
    max_eig = std::max(max_eig, e);
  }
  if (max_eig == 0.0)
    throw std::invalid_argument("make_noisy_quadratic: all eigenvalues are zero");
  if (sigma < 0.0) throw std::invalid_argument("make_noisy_quadratic: sigma < 0");

  auto data = std::make_shared<detail::QuadraticData>(std::move(eigenvalues),
                                                      sigma, noise);
  RngStream init = RngStream::derive(seed, 0x1217);
  Vec x0(data->dim());
  init.fill_normal(x0);

  ProblemConstants c;
  c.L = data->max_eigenvalue();
  c.sigma = sigma;
  c.R = data->full_loss(x0);
  if (noise == NoiseModel::sphere) c.G = sigma;

  return ProblemHandle(std::move(data), std::move(x0), c,
                       RngStream::derive(seed, 0xA11CE));
}

// Binary logistic regression on n_samples synthetic points in `dim`
// dimensions; stochastic gradients average `batch` samples drawn uniformly
// with replacement.  Start point is the origin (loss ln 2 there).
inline ProblemHandle make_logistic_regression(std::size_t dim, std::size_t n_samples,
                                              std::size_t batch, std::uint64_t seed) {
  if (dim == 0 || n_samples < 2)
    throw std::invalid_argument("make_logistic_regression: bad dimensions");
  if (batch == 0 || batch > n_samples)
    throw std::invalid_argument(
        "make_logistic_regression: batch must be in [1, n_samples]");
  auto data = std::make_shared<detail::LogisticData>(dim, n_samples, batch, seed);
  return ProblemHandle(std::move(data), Vec(dim, 0.0), ProblemConstants{},
                       RngStream::derive(seed, 0xA11CE));
}

// Tanh classifier on overlapping Gaussian blobs; layers = widths from input
// to output, output width = class count.
inline ProblemHandle make_mlp_classifier(std::vector<std::size_t> layers,
                                         std::size_t n_samples, std::size_t batch,
                                         std::uint64_t seed) {
  if (n_samples < 2)
    throw std::invalid_argument("make_mlp_classifier: need at least 2 samples");
  if (batch == 0 || batch > n_samples)
    throw std::invalid_argument(
        "make_mlp_classifier: batch must be in [1, n_samples]");
  auto data = std::make_shared<detail::MlpData>(std::move(layers), n_samples,
                                                batch, seed);
  Vec x0 = data->initial_weights();
  return ProblemHandle(std::move(data), std::move(x0), ProblemConstants{},
                       RngStream::derive(seed, 0xA11CE));
}

}  // namespace glyder
