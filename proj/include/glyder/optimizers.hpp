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

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "glyder/vec.hpp"

namespace glyder {

enum class OptimizerKind { sgd, momentum, adam };

// Direction providers that turn a gradient into an update direction, leaving
// the stepsize to the scheduler.  State is a plain value so trials can copy
// and replay it; direction() mutates the state it is given.
struct OptimizerState {
  OptimizerKind kind = OptimizerKind::sgd;
  double momentum = 0.9;      // heavy-ball coefficient
  double beta1 = 0.9;         // adam first-moment decay
  double beta2 = 0.999;       // adam second-moment decay
  double epsilon = 1e-7;      // adam denominator guard
  std::int64_t step = 0;
  Vec m;                      // momentum / adam first moment
  Vec v;                      // adam second moment

  static OptimizerState sgd() { return OptimizerState{}; }
  static OptimizerState heavy_ball(double coeff = 0.9) {
    OptimizerState s;
    s.kind = OptimizerKind::momentum;
    s.momentum = coeff;
    return s;
  }
  static OptimizerState adam(double b1 = 0.9, double b2 = 0.999, double eps = 1e-7) {
    OptimizerState s;
    s.kind = OptimizerKind::adam;
    s.beta1 = b1;
    s.beta2 = b2;
    s.epsilon = eps;
    return s;
  }
};

// Maps a gradient to the update direction (the iterate moves along -direction
// once the scheduler scales it).  No weight decay anywhere.
inline Vec direction(OptimizerState& state, const Vec& grad) {
  ++state.step;
  switch (state.kind) {
    case OptimizerKind::sgd:
      return grad;
    case OptimizerKind::momentum: {
      if (state.m.size() != grad.size()) state.m.assign(grad.size(), 0.0);
      for (std::size_t i = 0; i < grad.size(); ++i)
        state.m[i] = state.momentum * state.m[i] + grad[i];
      return state.m;
    }
    case OptimizerKind::adam: {
      if (state.m.size() != grad.size()) {
        state.m.assign(grad.size(), 0.0);
        state.v.assign(grad.size(), 0.0);
      }
      const double t = static_cast<double>(state.step);
      const double c1 = 1.0 - std::pow(state.beta1, t);
      const double c2 = 1.0 - std::pow(state.beta2, t);
      Vec dir(grad.size());
      for (std::size_t i = 0; i < grad.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
        const double mhat = state.m[i] / c1;
        const double vhat = state.v[i] / c2;
        dir[i] = mhat / (std::sqrt(vhat) + state.epsilon);
      }
      return dir;
    }
  }
  throw std::logic_error("direction: unknown optimizer kind");
}

}  // namespace glyder
