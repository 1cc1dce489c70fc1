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

#include "ctxval/random.hpp"

#include <cmath>
#include <numbers>

namespace ctxval {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 == 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = mag * std::sin(ang);
  have_spare_ = true;
  return mag * std::cos(ang);
}

std::size_t Rng::below(std::size_t n) {
  const std::uint64_t bound = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
  std::uint64_t x = next_u64();
  while (x >= bound) x = next_u64();
  return static_cast<std::size_t>(x % n);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CVector random_state(std::size_t n, Rng& rng) {
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = cplx(rng.normal(), rng.normal());
  return v.normalized();
}

namespace {

/// Modified Gram-Schmidt with one re-orthogonalization pass.
std::vector<CVector> orthonormalize(std::vector<CVector> cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        cols[i] -= inner(cols[j], cols[i]) * cols[j];
      }
    }
    cols[i] = cols[i].normalized();
  }
  return cols;
}

}  // namespace

CMatrix random_unitary(std::size_t n, Rng& rng) {
  std::vector<CVector> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    CVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = cplx(rng.normal(), rng.normal());
    cols.push_back(std::move(c));
  }
  cols = orthonormalize(std::move(cols));
  CMatrix u(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, j) = cols[j][i];
  return u;
}

Frame random_frame(std::size_t n, Rng& rng) {
  std::vector<CVector> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    CVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = cplx(rng.normal(), rng.normal());
    cols.push_back(std::move(c));
  }
  return Frame(orthonormalize(std::move(cols)));
}

CMatrix random_hermitian(std::size_t n, Rng& rng) {
  CMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z(rng.normal(), rng.normal());
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

Frame rotate_within_blocks(const Frame& f,
                           const std::vector<std::vector<std::size_t>>& blocks,
                           Rng& rng) {
  std::vector<CVector> vs = f.vectors();
  for (const auto& block : blocks) {
    const std::size_t b = block.size();
    const CMatrix q = random_unitary(b, rng);
    std::vector<CVector> mixed(b, CVector(f.dim()));
    for (std::size_t r = 0; r < b; ++r) {
      for (std::size_t s = 0; s < b; ++s) {
        mixed[r] += q(s, r) * f[block[s]];
      }
    }
    for (std::size_t r = 0; r < b; ++r) vs[block[r]] = std::move(mixed[r]);
  }
  return Frame(std::move(vs));
}

Frame permuted(const Frame& f, const std::vector<std::size_t>& perm) {
  std::vector<CVector> vs;
  vs.reserve(f.dim());
  for (std::size_t j = 0; j < f.dim(); ++j) vs.push_back(f[perm[j]]);
  return Frame(std::move(vs));
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    std::swap(p[i - 1], p[rng.below(i)]);
  }
  return p;
}

std::vector<std::vector<std::size_t>> random_partition(std::size_t n, Rng& rng) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pick = rng.below(blocks.size() + 1);
    if (pick == blocks.size()) {
      blocks.push_back({i});
    } else {
      blocks[pick].push_back(i);
    }
  }
  return blocks;  // blocks are created in order of smallest member
}

}  // namespace ctxval
