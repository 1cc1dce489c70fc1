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

#include "ctxval/context.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace ctxval {

namespace {

constexpr double kOverlapTol = 1e-8;
constexpr double kSpanTol = 1e-7;

/// Canonical form for hashing: phase-normalize each vector (largest-magnitude
/// entry real positive) then sort vectors lexicographically on a 1e-9 grid.
std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> canonical_grid(
    const Frame& f) {
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> keys;
  keys.reserve(f.dim());
  for (const CVector& v : f.vectors()) {
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      const double mag = std::abs(v[i]);
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    const cplx rot = best_mag > 0.0 ? std::conj(v[best]) / best_mag : cplx(1.0);
    std::vector<std::pair<std::int64_t, std::int64_t>> key;
    key.reserve(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) {
      const cplx z = v[i] * rot;
      key.emplace_back(std::llround(z.real() * 1e9), std::llround(z.imag() * 1e9));
    }
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::string fnv1a_hex(
    const std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>& keys) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::int64_t value) {
    auto u = static_cast<std::uint64_t>(value);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& key : keys) {
    for (const auto& [re, im] : key) {
      feed(re);
      feed(im);
    }
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace

Context::Context(Frame frame) : frame_(std::move(frame)) {
  id_ = fnv1a_hex(canonical_grid(frame_));
}

std::optional<EquivalenceWitness> contexts_equivalent(const Frame& a, const Frame& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("contexts_equivalent: frame dimensions differ");
  }
  const std::size_t n = a.dim();
  EquivalenceWitness w;
  w.perm.assign(n, 0);
  w.phases.assign(n, 0.0);
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t match = n;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx ov = inner(a[i], b[j]);
      const double p = std::norm(ov);
      if (p >= 1.0 - kOverlapTol) {
        if (match != n || used[i]) return std::nullopt;
        match = i;
        w.perm[j] = i;
        w.phases[i] = std::arg(ov);
      } else if (p > kOverlapTol) {
        return std::nullopt;
      }
    }
    if (match == n) return std::nullopt;
    used[match] = true;
  }
  return w;
}

bool is_stable(const CMatrix& o, const Context& c) {
  if (!o.is_hermitian()) throw NotHermitianError("is_stable: observable not Hermitian");
  if (o.dim() != c.dim()) throw DimensionMismatchError("is_stable: dimension mismatch");
  const double tol = 1e-8 * (1.0 + o.max_abs());
  const Frame& f = c.frame();
  for (std::size_t j = 0; j < f.dim(); ++j) {
    const CVector col = o.apply(f[j]);
    for (std::size_t i = 0; i < f.dim(); ++i) {
      if (i == j) continue;
      if (std::abs(inner(f[i], col)) > tol) return false;
    }
  }
  return true;
}

std::vector<double> stable_eigenvalues(const CMatrix& o, const Context& c) {
  if (!is_stable(o, c)) {
    throw NotStableError("observable is not stable in the given context");
  }
  const Frame& f = c.frame();
  std::vector<double> values(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) {
    values[i] = inner(f[i], o.apply(f[i])).real();
  }
  return values;
}

SpectralForm stable_spectral_form(const CMatrix& o, const Context& c,
                                  double group_tol) {
  const std::vector<double> values = stable_eigenvalues(o, c);
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  double max_val = 0.0;
  for (double v : values) max_val = std::max(max_val, std::abs(v));
  const double gap = group_tol * (1.0 + max_val);

  SpectralForm form;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = order[k];
    if (form.blocks.empty() || values[idx] - form.blocks.back().eigenvalue > gap) {
      form.blocks.push_back({values[idx], {idx}});
    } else {
      form.blocks.back().indices.push_back(idx);
    }
  }
  for (auto& block : form.blocks) {
    double sum = 0.0;
    for (std::size_t idx : block.indices) sum += values[idx];
    block.eigenvalue = sum / static_cast<double>(block.indices.size());
    std::sort(block.indices.begin(), block.indices.end());
  }
  return form;
}

PartitionPair finest_partitions(const Context& a, const Context& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("finest_partitions: dimension mismatch");
  }
  if (equivalent(a, b)) {
    throw EquivalentContextsError(
        "finest_partitions: contexts are equivalent (trivial m = n partitions)");
  }
  const std::size_t n = a.dim();
  const Frame& fa = a.frame();
  const Frame& fb = b.frame();

  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      edge[i][j] = std::abs(inner(fa[i], fb[j])) > kOverlapTol;

  // Connected components of the bipartite graph, seeded in a-index order.
  std::vector<int> comp_a(n, -1), comp_b(n, -1);
  int comps = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (comp_a[seed] >= 0) continue;
    const int id = comps++;
    std::vector<std::size_t> stack_a{seed};
    comp_a[seed] = id;
    std::vector<std::size_t> stack_b;
    while (!stack_a.empty() || !stack_b.empty()) {
      if (!stack_a.empty()) {
        const std::size_t i = stack_a.back();
        stack_a.pop_back();
        for (std::size_t j = 0; j < n; ++j) {
          if (edge[i][j] && comp_b[j] < 0) {
            comp_b[j] = id;
            stack_b.push_back(j);
          }
        }
      } else {
        const std::size_t j = stack_b.back();
        stack_b.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
          if (edge[i][j] && comp_a[i] < 0) {
            comp_a[i] = id;
            stack_a.push_back(i);
          }
        }
      }
    }
  }

  PartitionPair pp;
  pp.source_blocks.assign(static_cast<std::size_t>(comps), {});
  pp.target_blocks.assign(static_cast<std::size_t>(comps), {});
  for (std::size_t i = 0; i < n; ++i)
    pp.source_blocks[static_cast<std::size_t>(comp_a[i])].push_back(i);
  for (std::size_t j = 0; j < n; ++j) {
    if (comp_b[j] < 0) {
      throw SpanMismatchError("finest_partitions: isolated target vector");
    }
    pp.target_blocks[static_cast<std::size_t>(comp_b[j])].push_back(j);
  }

  for (std::size_t k = 0; k < pp.block_count(); ++k) {
    if (pp.source_blocks[k].size() != pp.target_blocks[k].size()) {
      throw SpanMismatchError("finest_partitions: block sizes differ");
    }
    const CMatrix pa = fa.projector(pp.source_blocks[k]);
    const CMatrix pb = fb.projector(pp.target_blocks[k]);
    if (max_abs_diff(pa, pb) > kSpanTol) {
      throw SpanMismatchError("finest_partitions: span equality fails; overlaps "
                              "too close to the zero threshold");
    }
  }
  return pp;
}

std::vector<CMatrix> shared_projectors(const Context& a, const Context& b) {
  const PartitionPair pp = finest_partitions(a, b);
  std::vector<CMatrix> ps;
  ps.reserve(pp.block_count());
  for (const auto& block : pp.source_blocks) ps.push_back(a.frame().projector(block));
  return ps;
}

ContextChange change_unitary(const Context& a, const Context& b) {
  PartitionPair pp = finest_partitions(a, b);
  const std::size_t n = a.dim();
  std::vector<std::size_t> q(n, 0);
  for (std::size_t k = 0; k < pp.block_count(); ++k) {
    const auto& src = pp.source_blocks[k];
    const auto& dst = pp.target_blocks[k];
    for (std::size_t r = 0; r < src.size(); ++r) q[src[r]] = dst[r];
  }
  CMatrix u(n);
  for (std::size_t i = 0; i < n; ++i) u += outer(b.frame()[q[i]], a.frame()[i]);
  if (!u.is_unitary(1e-9)) {
    throw NotUnitaryError("change_unitary: constructed map is not unitary");
  }
  return ContextChange{a, b, std::move(u), std::move(q), std::move(pp)};
}

bool invariance_check(const CMatrix& o, const ContextChange& ch) {
  if (!o.is_hermitian()) {
    throw NotHermitianError("invariance_check: observable not Hermitian");
  }
  const CMatrix rotated = ch.unitary * o * ch.unitary.adjoint();
  return max_abs_diff(rotated, o) <= 1e-8 * (1.0 + o.max_abs());
}

namespace {

std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

}  // namespace

std::vector<std::size_t> s_permutation(const Context& a, const Context& b,
                                       const Context& c) {
  const ContextChange ab = change_unitary(a, b);
  const ContextChange bc = change_unitary(b, c);
  const ContextChange ac = change_unitary(a, c);
  const std::vector<std::size_t> ac_inv = inverse_perm(ac.index_map);

  const std::size_t n = a.dim();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = ac_inv[bc.index_map[ab.index_map[i]]];

  const CMatrix s = ac.unitary.adjoint() * bc.unitary * ab.unitary;
  for (std::size_t i = 0; i < n; ++i) {
    const CVector image = s.apply(a.frame()[i]);
    if ((image - a.frame()[p[i]]).norm() > 1e-8) {
      throw NotPermutationError("s_permutation: image misses the frame");
    }
  }
  return p;
}

History::History(std::vector<Context> contexts) : contexts_(std::move(contexts)) {
  if (contexts_.empty()) throw InvalidConfigError("history must be nonempty");
  for (std::size_t i = 0; i + 1 < contexts_.size(); ++i) {
    if (contexts_[i].dim() != contexts_[i + 1].dim()) {
      throw DimensionMismatchError("history contexts have mixed dimensions");
    }
    if (equivalent(contexts_[i], contexts_[i + 1])) {
      throw EquivalentContextsError("consecutive history contexts are equivalent");
    }
  }
}

History History::extended(Context next) const {
  std::vector<Context> cs = contexts_;
  cs.push_back(std::move(next));
  return History(std::move(cs));
}

HistoryReduction reduce_history(const History& h) {
  if (h.size() < 2) {
    throw InvalidConfigError("reduce_history: history must have length >= 2");
  }
  const std::size_t n = h.front().dim();

  HistoryReduction red;
  red.steps.reserve(h.size() - 1);
  std::vector<std::size_t> forward(n);
  std::iota(forward.begin(), forward.end(), 0);
  CMatrix composed = CMatrix::identity(n);
  for (std::size_t step = 0; step + 1 < h.size(); ++step) {
    ContextChange ch = change_unitary(h[step], h[step + 1]);
    composed = ch.unitary * composed;
    for (std::size_t i = 0; i < n; ++i) forward[i] = ch.index_map[forward[i]];
    red.steps.push_back(std::move(ch));
  }
  red.composed = std::move(composed);
  red.pullback_perm = inverse_perm(forward);

  if (!equivalent(h.front(), h.back())) {
    ContextChange direct = change_unitary(h.front(), h.back());
    const std::vector<std::size_t> q_inv = inverse_perm(direct.index_map);
    red.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) red.perm[i] = q_inv[forward[i]];
    red.direct = std::move(direct);
  } else {
    red.perm = forward;
  }
  return red;
}

}  // namespace ctxval
