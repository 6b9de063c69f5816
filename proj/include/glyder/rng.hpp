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
#include <numbers>

#include "glyder/vec.hpp"

namespace glyder {

// Zero-mean noise families used by the stochastic gradient oracles: isotropic
// Gaussian with total variance sigma^2, or uniform on the sphere of radius
// sigma (bounded noise with |xi| = sigma almost surely).
enum class NoiseModel { gaussian, sphere };

// Counter-based pseudo-random stream in the SplitMix64 family.  Each stream is
// identified by a 64-bit key; output i is a strong 64-bit mix of
// key + i * gamma, so streams can be copied, replayed, and split into
// statistically independent children without shared mutable state.  Not
// cryptographic; intended for Monte Carlo and synthetic data generation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(mix64(seed + kGamma)) {}

  // Derives a stream from two independent labels, e.g. (data seed, trial id).
  static RngStream derive(std::uint64_t a, std::uint64_t b) {
    return RngStream(mix64(a + kGamma) ^ mix64(b + 0xD1B54A32D192ED03ULL));
  }

  // Child stream keyed off this stream's identity; does not advance *this.
  RngStream split(std::uint64_t child) const {
    return RngStream(key_ ^ mix64(child + 0x8BB84B93962EACC9ULL));
  }

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  // Uniform on (0, 1); never returns an exact 0 or 1.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by 128-bit multiply; bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Standard normal via Box-Muller; the second value of each pair is cached
  // so the stream state together with the cache fully determines the output.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(t);
    has_cached_ = true;
    return r * std::cos(t);
  }

  void fill_normal(Vec& out) {
    for (double& v : out) v = normal();
  }

  // Shared noise draws for the stochastic oracles: either isotropic Gaussian
  // with E|xi|^2 = sigma^2, or uniform on the sphere of radius sigma.
  Vec gaussian_noise(std::size_t dim, double sigma) {
    Vec xi(dim, 0.0);
    if (sigma == 0.0) return xi;
    const double per_coord = sigma / std::sqrt(static_cast<double>(dim));
    for (double& v : xi) v = per_coord * normal();
    return xi;
  }

  Vec sphere_noise(std::size_t dim, double sigma) {
    Vec xi(dim, 0.0);
    if (sigma == 0.0) return xi;
    double n2 = 0.0;
    do {
      fill_normal(xi);
      n2 = norm_sq(xi);
    } while (n2 == 0.0);
    scale(xi, sigma / std::sqrt(n2));
    return xi;
  }

  std::uint64_t key() const { return key_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace glyder
