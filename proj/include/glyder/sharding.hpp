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

#include <stdexcept>
#include <vector>

#include "glyder/problems.hpp"
#include "glyder/vec.hpp"

namespace glyder {

// Gradients of k disjoint shards of one batch, in shard order.  counts[i]
// is the number of samples behind grads[i]; indices is the shuffled sample
// order, so shard i covers the contiguous range summing counts[0..i).
struct ShardSet {
  std::vector<Vec> grads;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> indices;
};

// Splits one batch across k simulated parallel units and returns each unit's
// gradient.  The batch is shuffled with the handle's stream, cut into k
// contiguous chunks of floor(m/k) samples, and the remainder goes to the last
// shard.  For generative problems there is no dataset to split, so each
// shard is one independent oracle draw.
inline ShardSet shard_gradients(ProblemHandle& p, const Vec& x,
                                const BatchSelector& total_batch, std::size_t k) {
  if (k < 2) throw std::invalid_argument("shard_gradients: k must be >= 2");

  ShardSet out;
  out.grads.reserve(k);
  out.counts.reserve(k);

  if (p.generative()) {
    for (std::size_t s = 0; s < k; ++s) {
      out.grads.push_back(p.stochastic_grad(x));
      out.counts.push_back(1);
    }
    return out;
  }

  std::vector<std::size_t> idx = p.materialize(total_batch);
  const std::size_t m = idx.size();
  if (k > m)
    throw std::invalid_argument("shard_gradients: more shards than samples");

  // Fisher-Yates on the materialized order, driven by the problem stream so
  // the assignment of samples to shards replays with the trial.
  for (std::size_t i = m - 1; i > 0; --i) {
    const std::size_t j = p.stream().uniform_below(i + 1);
    std::swap(idx[i], idx[j]);
  }

  const std::size_t base = m / k;
  std::size_t start = 0;
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t len = (s + 1 == k) ? m - start : base;
    std::vector<std::size_t> chunk(idx.begin() + static_cast<std::ptrdiff_t>(start),
                                   idx.begin() + static_cast<std::ptrdiff_t>(start + len));
    out.grads.push_back(p.stochastic_grad(x, BatchSelector::fixed(std::move(chunk))));
    out.counts.push_back(len);
    start += len;
  }
  out.indices = std::move(idx);
  return out;
}

// Sample-weighted mean of the shard gradients; equals the whole-batch
// gradient up to floating-point reassociation.
inline Vec weighted_mean(const ShardSet& shards) {
  if (shards.grads.empty())
    throw std::invalid_argument("weighted_mean: empty shard set");
  std::size_t total = 0;
  for (std::size_t c : shards.counts) total += c;
  Vec out(shards.grads.front().size(), 0.0);
  for (std::size_t s = 0; s < shards.grads.size(); ++s)
    axpy(static_cast<double>(shards.counts[s]) / static_cast<double>(total),
         shards.grads[s], out);
  return out;
}

}  // namespace glyder
