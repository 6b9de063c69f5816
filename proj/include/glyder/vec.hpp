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

#include <cassert>
#include <cstddef>
#include <vector>

namespace glyder {

// Dense vectors are plain std::vector<double>; the helpers below cover the
// handful of BLAS-1 style operations the library needs.
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }

// y += alpha * x
inline void axpy(double alpha, const Vec& x, Vec& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(Vec& a, double alpha) {
  for (double& v : a) v *= alpha;
}

inline Vec scaled(const Vec& a, double alpha) {
  Vec out(a);
  scale(out, alpha);
  return out;
}

inline void add_inplace(Vec& a, const Vec& b) { axpy(1.0, b, a); }

inline Vec sum(const std::vector<Vec>& vs) {
  assert(!vs.empty());
  Vec out(vs.front().size(), 0.0);
  for (const Vec& v : vs) add_inplace(out, v);
  return out;
}

}  // namespace glyder
