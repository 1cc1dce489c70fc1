// Copyright 2026 The ctxval authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/oracles.hpp"

#include <cmath>

namespace ctxval_test {

using ctxval::CMatrix;
using ctxval::Frame;
using ctxval::PartitionPair;

std::vector<std::vector<std::vector<std::size_t>>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> rgs(n, 0);
  while (true) {
    std::size_t m = 0;
    for (std::size_t v : rgs) m = std::max(m, v + 1);
    std::vector<std::vector<std::size_t>> blocks(m);
    for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]].push_back(i);
    out.push_back(std::move(blocks));

    // Next restricted-growth string.
    std::size_t i = n;
    while (i-- > 1) {
      std::size_t max_prefix = 0;
      for (std::size_t k = 0; k < i; ++k) max_prefix = std::max(max_prefix, rgs[k]);
      if (rgs[i] <= max_prefix) {
        ++rgs[i];
        for (std::size_t k = i + 1; k < n; ++k) rgs[k] = 0;
        break;
      }
      if (i == 1) return out;
    }
    if (n <= 1) return out;
  }
}

std::optional<PartitionPair> brute_force_finest(const Frame& a, const Frame& b) {
  const std::size_t n = a.dim();
  constexpr double kMemberTol = 1e-8;
  constexpr double kProjTol = 1e-6;

  std::optional<PartitionPair> best;
  for (const auto& partition : all_partitions(n)) {
    PartitionPair candidate;
    std::vector<bool> taken(n, false);
    bool valid = true;
    for (const auto& block : partition) {
      const CMatrix pa = a.projector(block);
      std::vector<std::size_t> match;
      for (std::size_t j = 0; j < n && valid; ++j) {
        const double overlap = inner(b[j], pa.apply(b[j])).real();
        if (overlap > 1.0 - kMemberTol) {
          if (taken[j]) valid = false;
          match.push_back(j);
        } else if (overlap > kMemberTol) {
          valid = false;  // b_j straddles the block: span equality impossible
        }
      }
      if (!valid || match.size() != block.size()) {
        valid = false;
        break;
      }
      for (std::size_t j : match) taken[j] = true;
      if (max_abs_diff(pa, b.projector(match)) > kProjTol) {
        valid = false;
        break;
      }
      candidate.source_blocks.push_back(block);
      candidate.target_blocks.push_back(std::move(match));
    }
    if (!valid) continue;
    if (!best || candidate.block_count() > best->block_count()) {
      best = std::move(candidate);
    }
  }
  if (best && best->block_count() == n) return std::nullopt;  // equivalent frames
  return best;
}

Frame next_related_frame(const Frame& cur, ctxval::Rng& rng) {
  const std::size_t n = cur.dim();
  for (int attempt = 0; attempt < 32; ++attempt) {
    Frame candidate =
        rng.below(3) == 0
            ? ctxval::random_frame(n, rng)
            : ctxval::permuted(
                  ctxval::rotate_within_blocks(cur, ctxval::random_partition(n, rng),
                                               rng),
                  ctxval::random_permutation(n, rng));
    if (!ctxval::contexts_equivalent(cur, candidate)) return candidate;
  }
  throw std::runtime_error("next_related_frame: could not find a distinct frame");
}

ctxval::History random_history(std::size_t n, std::size_t extra_steps,
                               ctxval::Rng& rng) {
  ctxval::History h{ctxval::Context(ctxval::random_frame(n, rng))};
  for (std::size_t s = 0; s < extra_steps; ++s) {
    h = h.extended(ctxval::Context(next_related_frame(h.back().frame(), rng)));
  }
  return h;
}

}  // namespace ctxval_test
