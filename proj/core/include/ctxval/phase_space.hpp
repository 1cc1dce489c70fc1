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

#include <cmath>
#include <optional>
#include <vector>

#include "ctxval/context.hpp"
#include "ctxval/random.hpp"

namespace ctxval {

/// Point of the hidden-variable space Omega = R^{2n}, stored as the stacked
/// chart coordinates (x^1..x^n, y^1..y^n).
struct PhasePoint {
  std::vector<double> coords;
  std::size_t dim2n() const { return coords.size(); }
};

/// The coordinate chart attached to a fixed base context; it never changes
/// within one model instance.
class Chart {
 public:
  explicit Chart(Context base) : base_(std::move(base)) {}
  const Context& base() const { return base_; }
  std::size_t dim() const { return base_.dim(); }

 private:
  Context base_;
};

/// x_i + i y_i are the coefficients of v in the chart's base frame.
PhasePoint iota(const Chart& chart, const CVector& v);
CVector iota_inv(const Chart& chart, const PhasePoint& p);

struct Ball {
  CVector center;
  double radius = 0.0;
};

struct SymplecticReport {
  double symplectic_residual = 0.0;  ///< ||M^T J M - J||_max
  double det = 0.0;
  bool ok(double tol = 1e-9) const {
    return symplectic_residual <= tol && std::abs(det - 1.0) <= tol;
  }
};

/// Checks that realify(U) is a canonical, volume-preserving transformation:
/// M^T J M = J for the standard symplectic J and det M = 1.
SymplecticReport symplectic_volume_check(const CMatrix& u);

/// Uniform point of the unit ball in R^dim: Gaussian direction, radius
/// u^{1/dim}.
std::vector<double> sample_unit_ball(std::size_t dim, Rng& rng);

/// Uniform point of the 2n-ball around the center (the center's complex
/// entries are read as chart coordinates).
PhasePoint sample_ball(const Ball& b, Rng& rng);

/// sqrt(2)/2: orthonormal tube centers are sqrt(2) apart, so radii below this
/// bound can never produce an ambiguous tube match.
inline constexpr double kMaxEpsilon = 0.70710678118654752440;

/// Value of an observable stable in c at a phase point given in c's chart:
/// the eigenvalue of the block whose unit eigensphere passes within epsilon
/// of the point. The empty optional is the deliberately unspecified branch;
/// AmbiguousTube signals two matching blocks (impossible for epsilon below
/// kMaxEpsilon with orthogonal eigenspaces).
std::optional<double> tube_value(const CMatrix& o, const Context& c,
                                 const PhasePoint& p, double epsilon);

/// Precomputed tube classifier for repeated tests against one observable.
class TubeClassifier {
 public:
  TubeClassifier(const CMatrix& o, const Context& c, double epsilon);
  std::optional<double> classify(const PhasePoint& p) const;
  std::optional<double> classify(std::span<const double> coords) const;

 private:
  double epsilon_;
  std::size_t n_;
  SpectralForm form_;
};

/// T = iota o U o iota^{-1} on chart coordinates; inverse applies U^dagger.
PhasePoint context_change_map(const Chart& chart, const ContextChange& ch,
                              const PhasePoint& p, bool inverse = false);

/// Chart-coordinates matrix of a context change, for hot loops.
class CoordinateMap {
 public:
  CoordinateMap(const Chart& chart, const ContextChange& ch);
  /// in and out must not alias.
  void apply(std::span<const double> in, std::span<double> out, bool inverse) const;
  PhasePoint apply(const PhasePoint& p, bool inverse) const;

 private:
  std::size_t n_;
  std::vector<cplx> matrix_;  // row-major n x n, chart coordinates
};

}  // namespace ctxval
