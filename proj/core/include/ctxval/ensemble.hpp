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
#include <vector>

#include "ctxval/phase_space.hpp"

namespace ctxval {

struct ModelConfig {
  CVector state;            ///< unit vector; normalized exactly at preparation
  double epsilon = 0.3;     ///< in (0, sqrt(2)/2)
  Context base_context;     ///< first context of every history
  std::uint64_t seed = 42;
  std::size_t n_samples = 0;
};

/// Half-open subinterval of [0, 1) carrying a frame-index label.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t label = 0;
  double length() const { return hi - lo; }
};

/// Ordered disjoint segments covering [0, 1); the mass of label i equals
/// |<b_i|phi>|^2 for the context's frame.
struct Split {
  std::vector<Segment> segments;  ///< sorted ascending by lo, contiguous
  double mass_of(std::size_t label) const;
};

/// Persistent hidden coordinates of one ensemble member: the wedge-angle
/// fraction u and the unit-ball offset e. Fixed at preparation; context
/// changes never mutate them.
struct HiddenSample {
  double u = 0.0;
  std::vector<double> offset;  ///< dim 2n, ||offset|| < 1
};

/// The epsilon-ball ensemble carried through a history of context changes:
/// a deterministic function of (config, history).
class LabeledEnsemble {
 public:
  const ModelConfig& config() const { return config_; }
  const History& history() const { return history_; }
  const Context& current() const { return history_.back(); }
  const Split& split() const { return split_; }
  const std::vector<HiddenSample>& samples() const { return samples_; }
  const std::vector<ContextChange>& changes() const { return changes_; }

  friend LabeledEnsemble prepare(const ModelConfig& config);
  friend LabeledEnsemble extend_history(const LabeledEnsemble& le, const Context& next);

 private:
  LabeledEnsemble(ModelConfig config, History history)
      : config_(std::move(config)), history_(std::move(history)) {}

  ModelConfig config_;
  History history_;
  std::vector<ContextChange> changes_;  ///< one per history step
  Split split_;
  std::vector<HiddenSample> samples_;
};

/// Singleton-history ensemble in the base context: samples drawn from the
/// seed (u uniform on [0,1), e uniform in the unit 2n-ball), segments are the
/// consecutive intervals of cumulative Born masses.
LabeledEnsemble prepare(const ModelConfig& config);

/// Refines the split along the finest partitions between the current and next
/// contexts: within each block, the source segments are re-subdivided in
/// order into the next context's Born masses (ascending target index). Block
/// unions keep their exact boundaries; samples are untouched.
LabeledEnsemble extend_history(const LabeledEnsemble& le, const Context& next);

/// Label of the segment containing the sample's u coordinate.
std::size_t label_of(const LabeledEnsemble& le, const HiddenSample& s);

/// Geometric position in Omega: the image-ball center iota(b_label) plus the
/// contracted offset epsilon |<b_label|phi>|^{1/n} e, in the base chart.
PhasePoint position_of(const LabeledEnsemble& le, const HiddenSample& s);

/// Per-sample value of an observable stable in the current context: the
/// eigenvalue attached to each sample's label.
std::vector<double> assign_value(const LabeledEnsemble& le, const CMatrix& o);

/// Same values computed the long way: pull the position back through the
/// inverted context-change maps and classify the pulled-back observable's
/// tube in the base context. Must agree with assign_value on every sample.
std::vector<double> assign_value_pullback(const LabeledEnsemble& le, const CMatrix& o);

/// sum_i mass(i) eigenvalue(i) over the split; equals <phi|O|phi> within 1e-9.
double expectation_exact(const LabeledEnsemble& le, const CMatrix& o);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Sample mean and standard error of assign_value (fixed-order reduction).
McEstimate expectation_mc(const LabeledEnsemble& le, const CMatrix& o);

struct GFuncReport {
  std::size_t samples_checked = 0;
  double max_fn_dev = 0.0;    ///< |v(f(B)) - f(v(B))|
  double max_sum_dev = 0.0;   ///< |v(A+B) - (v(A)+v(B))|
  double max_prod_dev = 0.0;  ///< |v(AB) - v(A)v(B)|
};

/// Verifies v(f(B)) = f(v(B)) per sample, with f evaluated on B's eigenvalue
/// table (never on raw sample values), plus the sum/product homomorphism for
/// the commuting pair (B, f(B)). Throws GFuncViolation on the first offender.
GFuncReport check_gfunc(const LabeledEnsemble& le, const CMatrix& b, const RealFn& f);

struct NTrnsReport {
  std::size_t samples_checked = 0;
  double max_dev = 0.0;
};

/// Verifies that an observable stable in both of the last two contexts of
/// after's history keeps its per-sample value across the extension. before
/// must be after truncated by one context. Throws NTrnsViolation on the first
/// offender.
NTrnsReport check_ntrns(const LabeledEnsemble& before, const LabeledEnsemble& after,
                        const CMatrix& o);

}  // namespace ctxval
