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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ctxval/linalg.hpp"

namespace ctxval {

/// Seeded random stream with explicit uniform/normal transforms, so results
/// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the spare deviate is cached.
  double normal();

  /// Uniform integer in [0, n), n >= 1.
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic derived seed for independent substreams (splitmix64 step).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

/// Haar-uniform unit vector in C^n.
CVector random_state(std::size_t n, Rng& rng);

/// Unitary from Gram-Schmidt of a complex Gaussian matrix.
CMatrix random_unitary(std::size_t n, Rng& rng);
Frame random_frame(std::size_t n, Rng& rng);

CMatrix random_hermitian(std::size_t n, Rng& rng);

/// Frame spanning the same blocks as f: vectors mixed by a random unitary
/// within each block, positions kept.
Frame rotate_within_blocks(const Frame& f,
                           const std::vector<std::vector<std::size_t>>& blocks,
                           Rng& rng);

/// new[j] = f[perm[j]].
Frame permuted(const Frame& f, const std::vector<std::size_t>& perm);

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

/// Random set partition of {0..n-1}; blocks sorted by smallest member.
std::vector<std::vector<std::size_t>> random_partition(std::size_t n, Rng& rng);

}  // namespace ctxval
