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

#include <optional>
#include <string>
#include <vector>

#include "ctxval/linalg.hpp"

namespace ctxval {

/// Witness of frame equivalence: b_j = e^{i phases[perm[j]]} a_{perm[j]}.
struct EquivalenceWitness {
  std::vector<std::size_t> perm;  ///< perm[j]: a-frame index matched by b_j.
  std::vector<double> phases;     ///< phases[i]: phase attached to a_i.
};

/// A measurement context: an orthonormal frame taken modulo index permutation
/// and per-vector phase. The id is a stable hash of the canonicalized
/// representative, so equal ids imply equivalent contexts.
class Context {
 public:
  Context() = default;
  explicit Context(Frame frame);

  const Frame& frame() const { return frame_; }
  const std::string& id() const { return id_; }
  std::size_t dim() const { return frame_.dim(); }

 private:
  Frame frame_;
  std::string id_;
};

/// Decides equivalence by testing whether [|<a_i|b_j>|^2] is a permutation
/// matrix within 1e-8; returns the witnessing permutation and phases.
std::optional<EquivalenceWitness> contexts_equivalent(const Frame& a, const Frame& b);

inline bool equivalent(const Context& a, const Context& b) {
  return contexts_equivalent(a.frame(), b.frame()).has_value();
}

/// O is stable in c iff it is diagonal in c's representative frame:
/// |<c_i|O|c_j>| <= 1e-8 (1 + ||O||_max) for all i != j.
bool is_stable(const CMatrix& o, const Context& c);

/// Per-index eigenvalues o_i = Re<c_i|O|c_i> of an observable stable in c.
std::vector<double> stable_eigenvalues(const CMatrix& o, const Context& c);

/// Eigenvalue-grouped index blocks of an observable stable in c, over c's
/// frame indices; blocks ascending by eigenvalue.
SpectralForm stable_spectral_form(const CMatrix& o, const Context& c,
                                  double group_tol = kDefaultGroupTol);

/// The unique finest partitions {I_k}, {J_k} with
/// span{a_i : i in I_k} = span{b_j : j in J_k}.
struct PartitionPair {
  std::vector<std::vector<std::size_t>> source_blocks;  ///< I_k over the a-frame.
  std::vector<std::vector<std::size_t>> target_blocks;  ///< J_k over the b-frame.
  std::size_t block_count() const { return source_blocks.size(); }
};

/// Connected components of the bipartite overlap graph with edge (i, j) iff
/// |<a_i|b_j>| > 1e-8; blocks sorted by smallest a-index. Verifies the span
/// equality through the block projectors (SpanMismatch on failure) and
/// rejects equivalent contexts (which would yield the trivial m = n answer).
PartitionPair finest_partitions(const Context& a, const Context& b);

/// P_k = sum_{i in I_k} |a_i><a_i| for the finest partitions; every
/// observable stable in both contexts is a real combination of these.
std::vector<CMatrix> shared_projectors(const Context& a, const Context& b);

/// The block-respecting basis-exchange unitary
/// U = sum_k sum_{i in I_k} |b_{q(i)}><a_i|, with q order-preserving within
/// each block (ascending a-index to ascending b-index).
struct ContextChange {
  Context source;
  Context target;
  CMatrix unitary;
  std::vector<std::size_t> index_map;  ///< q: a-frame index -> b-frame index.
  PartitionPair partitions;
};

ContextChange change_unitary(const Context& a, const Context& b);

/// True iff ||U O U^dagger - O||_max <= 1e-8 (1 + ||O||_max); guaranteed for
/// O stable in both endpoint contexts.
bool invariance_check(const CMatrix& o, const ContextChange& ch);

/// The permutation p with U_{a->c}^dagger U_{b->c} U_{a->b} |a_i> = |a_{p(i)}>.
/// Throws NotPermutation if any image misses the frame by more than 1e-8.
std::vector<std::size_t> s_permutation(const Context& a, const Context& b,
                                       const Context& c);

/// Nonempty sequence of contexts; consecutive entries must be non-equivalent.
class History {
 public:
  explicit History(std::vector<Context> contexts);
  explicit History(Context base) : contexts_{std::move(base)} {}

  std::size_t size() const { return contexts_.size(); }
  const Context& operator[](std::size_t i) const { return contexts_[i]; }
  const Context& front() const { return contexts_.front(); }
  const Context& back() const { return contexts_.back(); }
  const std::vector<Context>& contexts() const { return contexts_; }

  History extended(Context next) const;

 private:
  std::vector<Context> contexts_;
};

/// Reduction of a composed history to one direct change plus a base-frame
/// permutation: composed |a_i> = direct.unitary |a_{perm[i]}>. When the first
/// and last contexts are equivalent no direct change exists and the composed
/// product is itself the permutation, composed |a_i> = |w_{perm[i]}> with w
/// the last frame. pullback_perm is the reverse identity
/// U_1^dagger ... U_{k-1}^dagger |w_i> = |a_{pullback_perm[i]}>.
struct HistoryReduction {
  std::optional<ContextChange> direct;
  std::vector<std::size_t> perm;
  std::vector<std::size_t> pullback_perm;
  CMatrix composed;
  std::vector<ContextChange> steps;
};

HistoryReduction reduce_history(const History& h);

}  // namespace ctxval
