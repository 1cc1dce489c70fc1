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
#include <string>
#include <utility>
#include <vector>

#include "ctxval/ensemble.hpp"

namespace ctxval {

/// Pauli matrices and two-qubit products.
CMatrix sigma_x();
CMatrix sigma_y();
CMatrix sigma_z();

/// The six contexts of the two-qubit anticorrelation example, the singlet
/// state, and the named product observables.
struct PeresFixture {
  Context alpha;    ///< x (x) x product basis
  Context beta;     ///< y (x) y product basis
  Context gamma;    ///< z (x) z product basis
  Context delta;    ///< x (x) y product basis
  Context epsilon;  ///< y (x) x product basis
  Context xi;       ///< (|z+-z-+> +- i |z-+z+->)/sqrt(2) combinations
  CVector singlet;

  /// (name, observable) for sx(x)I, I(x)sx, sx(x)sx, sy(x)I, I(x)sy,
  /// sy(x)sy, sz(x)I, I(x)sz, sz(x)sz, sx(x)sy, sy(x)sx.
  std::vector<std::pair<std::string, CMatrix>> observables;
  /// (name, context) in the order alpha..xi.
  std::vector<std::pair<std::string, Context>> contexts;

  /// Contexts (by name) in which each observable is stable.
  std::vector<std::pair<std::string, std::vector<std::string>>> stability_table() const;
};

PeresFixture peres_contexts();

/// The degenerate three-level fixture: B = diag(1,2,3), C its rotation in the
/// (e1, e2) plane, and the piecewise maps f, g with f(B) = g(C) = A.
struct RemarkFixture {
  CMatrix b_hat;
  CMatrix c_hat;
  CMatrix a_hat;  ///< diag(2, 2, 3)
  Context b_context;
  Context c_context;
  EigenvalueTable f;
  EigenvalueTable g;
};

RemarkFixture remark_fixture();

struct ScenarioConfig {
  double epsilon = 0.3;
  std::uint64_t seed = 42;
  std::size_t n_samples = 100000;
  bool verify_dual_path = true;
};

/// Everything run_peres establishes, per sample where it matters.
struct PeresReport {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;

  int product_value = 0;          ///< v_xi((sx(x)sy)(sy(x)sx)), identical on all samples
  int noncontextual_product = 0;  ///< v(sx(x)I)^2 v(sy(x)I)^2
  bool contradiction_verified = false;
  bool acrl_ok = false;        ///< per-sample anticorrelation in alpha/beta/gamma ends
  bool dual_path_checked = false;
  bool dual_path_ok = false;

  std::size_t flips_x = 0;  ///< samples whose sx(x)I value differs across routes
  std::size_t flips_y = 0;
  std::string hysteresis_flags;  ///< one 'x' or 'y' per sample

  /// History label (arrow notation) -> per-sample values of that history's
  /// designated observable.
  std::vector<std::pair<std::string, std::vector<int>>> per_history_values;
  std::vector<std::pair<std::string, std::vector<std::string>>> stability_table;
};

/// Runs the singlet through xi; xi->gamma; xi->delta->alpha; xi->delta->beta;
/// xi->epsilon->beta; xi->epsilon->alpha and verifies the product identity,
/// the four-factor history product, the exactly-one-flip hysteresis pattern,
/// per-sample anticorrelation, and the noncontextual contradiction. Throws
/// AssertionFailure naming the violated statement (must never fire).
PeresReport run_peres(const ScenarioConfig& cfg);

struct RemarkReport {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  bool matrices_match = false;   ///< f(B) = g(C) = A as matrices
  bool stable_in_both = false;   ///< A stable in both frames
  bool route_consistent = false; ///< per-sample value of A equal on both visiting orders
  double max_route_dev = 0.0;
};

/// Builds the Remark fixture and checks that the value assigned to A is
/// consistent along both context-visiting orders (f route, g route, n-TRNS).
RemarkReport run_remark(const ScenarioConfig& cfg);

struct BornReport {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  std::vector<std::string> history_ids;
  double exact_expectation = 0.0;
  double quantum_expectation = 0.0;
  double abs_diff = 0.0;
  double mc_estimate = 0.0;
  double mc_standard_error = 0.0;
  bool exact_ok = false;  ///< |exact - quantum| <= 1e-9
  bool mc_ok = false;     ///< |mc - exact| <= 5 standard errors
};

/// The ensemble a born run drives: prepared in the first frame's context and
/// extended through the rest.
LabeledEnsemble born_ensemble(const CVector& state,
                              const std::vector<Frame>& history_frames,
                              const ScenarioConfig& cfg);

/// Compares the model's exact and Monte Carlo expectations of the observable
/// with <phi|O|phi>.
BornReport run_born(const LabeledEnsemble& le, const CMatrix& observable);

/// Convenience wrapper over born_ensemble + run_born.
BornReport run_born(const CVector& state, const std::vector<Frame>& history_frames,
                    const CMatrix& observable, const ScenarioConfig& cfg);

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double max_residual = 0.0;
  std::uint64_t seed = 0;
  bool ok() const { return violations == 0; }
};

/// Randomized verification suites (deterministic per seed).
SuiteReport run_gfunc_suite(std::size_t trials, std::uint64_t seed);
SuiteReport run_ntrns_suite(std::size_t trials, std::uint64_t seed);
SuiteReport run_symplectic_suite(std::size_t trials, std::uint64_t seed);
SuiteReport run_born_suite(std::size_t trials, std::uint64_t seed,
                           std::size_t mc_samples = 10000);
SuiteReport run_dualpath_suite(std::size_t trials, std::uint64_t seed);

}  // namespace ctxval
