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

namespace glyder {

// Streaming mean/variance accumulator (Welford's update).  Numerically stable
// for the long Monte Carlo runs used by the statistical checks.
class RunningMoments {
 public:
  void push(double x) {
    ++n_;
    const double d1 = x - mean_;
    mean_ += d1 / static_cast<double>(n_);
    m2_ += d1 * (x - mean_);
  }

  std::int64_t count() const { return n_; }

  double mean() const {
    if (n_ == 0) throw std::logic_error("RunningMoments: no samples");
    return mean_;
  }

  // Unbiased sample variance; needs at least two samples.
  double variance() const {
    if (n_ < 2) throw std::logic_error("RunningMoments: variance needs n >= 2");
    return m2_ / static_cast<double>(n_ - 1);
  }

  double stddev() const { return std::sqrt(variance()); }

  // Standard error of the mean.
  double std_error() const {
    return std::sqrt(variance() / static_cast<double>(n_));
  }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace glyder
