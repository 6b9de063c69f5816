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
#include <stdexcept>

#include "glyder/problems.hpp"
#include "glyder/vec.hpp"

namespace glyder {

// Local smoothness models for the stepsize rule.
//
//   constant: a caller-supplied global L.
//   proj_1d:  curvature of the loss along the current direction, measured by
//             one Hessian-vector product on the same batch that produced the
//             gradient.
//   gnb:      largest squared coordinate of the batch gradient, a cheap proxy
//             that needs no second-order information.
enum class SmoothnessKind { constant, proj_1d, gnb };

// d^T H d can be read as either the raw quadratic form or the Rayleigh
// quotient d^T H d / |d|^2.  The raw form matches a stepsize that multiplies
// an unnormalized direction; the quotient is the scale-free curvature.
enum class CurvatureMode { quadratic_form, rayleigh };

struct SmoothnessEstimator {
  SmoothnessKind kind = SmoothnessKind::constant;
  double constant_L = 1.0;
  CurvatureMode curvature_mode = CurvatureMode::quadratic_form;
  // Estimates are clamped below by this value so downstream 1/L stays finite
  // even at flat or negative-curvature points.
  double floor = 1e-8;

  static SmoothnessEstimator constant(double L) {
    if (!(L > 0.0))
      throw std::invalid_argument("SmoothnessEstimator: constant L must be > 0");
    SmoothnessEstimator s;
    s.kind = SmoothnessKind::constant;
    s.constant_L = L;
    return s;
  }
  static SmoothnessEstimator projection(CurvatureMode mode = CurvatureMode::quadratic_form,
                                        double floor = 1e-8) {
    SmoothnessEstimator s;
    s.kind = SmoothnessKind::proj_1d;
    s.curvature_mode = mode;
    s.floor = floor;
    return s;
  }
  static SmoothnessEstimator gradient_norm_proxy(double floor = 1e-8) {
    SmoothnessEstimator s;
    s.kind = SmoothnessKind::gnb;
    s.floor = floor;
    return s;
  }
};

// One-dimensional curvature probe along `dir`, clamped below by `floor`.
// Callers are responsible for passing the same batch selector that produced
// the gradient so the probe sees consistent data.
inline double curvature_1d(ProblemHandle& p, const Vec& x, const Vec& dir,
                           const BatchSelector& b, CurvatureMode mode,
                           double floor) {
  const double ns = norm_sq(dir);
  if (ns == 0.0) return floor;
  double c = dot(dir, p.hvp(x, dir, b));
  if (mode == CurvatureMode::rayleigh) c /= ns;
  return std::max(c, floor);
}

// Largest squared coordinate of the gradient, clamped below by `floor`.
inline double gnb_estimate(const Vec& grad, double floor) {
  double m = 0.0;
  for (double g : grad) m = std::max(m, g * g);
  return std::max(m, floor);
}

// Dispatch on the estimator kind.  `grad` is the aggregated batch gradient
// (used by gnb), `dir` the descent direction (used by proj_1d), `b` the batch
// both were computed from.
inline double estimate_L(const SmoothnessEstimator& est, ProblemHandle& p,
                         const Vec& x, const Vec& grad, const Vec& dir,
                         const BatchSelector& b) {
  switch (est.kind) {
    case SmoothnessKind::constant:
      return est.constant_L;
    case SmoothnessKind::proj_1d:
      return curvature_1d(p, x, dir, b, est.curvature_mode, est.floor);
    case SmoothnessKind::gnb:
      return gnb_estimate(grad, est.floor);
  }
  throw std::logic_error("estimate_L: unknown kind");
}

}  // namespace glyder
