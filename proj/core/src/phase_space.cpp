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

#include "ctxval/phase_space.hpp"

#include <cmath>

namespace ctxval {

PhasePoint iota(const Chart& chart, const CVector& v) {
  if (v.dim() != chart.dim()) {
    throw DimensionMismatchError("iota: vector dimension does not match chart");
  }
  const CVector z = chart.base().frame().coefficients(v);
  const std::size_t n = chart.dim();
  PhasePoint p;
  p.coords.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    p.coords[i] = z[i].real();
    p.coords[i + n] = z[i].imag();
  }
  return p;
}

CVector iota_inv(const Chart& chart, const PhasePoint& p) {
  const std::size_t n = chart.dim();
  if (p.dim2n() != 2 * n) {
    throw DimensionMismatchError("iota_inv: point dimension does not match chart");
  }
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z(p.coords[i], p.coords[i + n]);
    v += z * chart.base().frame()[i];
  }
  return v;
}

SymplecticReport symplectic_volume_check(const CMatrix& u) {
  if (!u.is_unitary(1e-9)) {
    throw NotUnitaryError("symplectic_volume_check: input is not unitary");
  }
  const std::size_t n = u.dim();
  const RMatrix m = realify(u);
  RMatrix j(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i + n) = 1.0;
    j(i + n, i) = -1.0;
  }
  const RMatrix lhs = m.transpose() * j * m;
  SymplecticReport report;
  report.symplectic_residual = max_abs_diff(lhs, j);
  report.det = m.determinant();
  return report;
}

std::vector<double> sample_unit_ball(std::size_t dim, Rng& rng) {
  std::vector<double> e(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : e) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  const double r = std::pow(rng.uniform01(), 1.0 / static_cast<double>(dim));
  for (double& x : e) x *= inv * r;
  return e;
}

PhasePoint sample_ball(const Ball& b, Rng& rng) {
  if (b.radius < 0.0) throw InvalidConfigError("sample_ball: negative radius");
  const std::size_t n = b.center.dim();
  const std::vector<double> e = sample_unit_ball(2 * n, rng);
  PhasePoint p;
  p.coords.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    p.coords[i] = b.center[i].real() + b.radius * e[i];
    p.coords[i + n] = b.center[i].imag() + b.radius * e[i + n];
  }
  return p;
}

TubeClassifier::TubeClassifier(const CMatrix& o, const Context& c, double epsilon)
    : epsilon_(epsilon), n_(c.dim()), form_(stable_spectral_form(o, c)) {
  if (!(epsilon > 0.0 && epsilon < kMaxEpsilon)) {
    throw InvalidConfigError("tube epsilon must lie in (0, sqrt(2)/2)");
  }
}

std::optional<double> TubeClassifier::classify(const PhasePoint& p) const {
  return classify(std::span<const double>(p.coords));
}

std::optional<double> TubeClassifier::classify(std::span<const double> coords) const {
  if (coords.size() != 2 * n_) {
    throw DimensionMismatchError("tube classify: point dimension mismatch");
  }
  // In the chart of c the block projector keeps exactly the block's
  // coordinates, so dist^2 to the block's unit eigensphere is
  // |z|^2 + 1 - 2 ||P z||.
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    total += coords[i] * coords[i] + coords[i + n_] * coords[i + n_];
  }
  const double eps2 = epsilon_ * epsilon_;
  std::optional<double> value;
  for (const auto& block : form_.blocks) {
    double s2 = 0.0;
    for (std::size_t i : block.indices) {
      s2 += coords[i] * coords[i] + coords[i + n_] * coords[i + n_];
    }
    if (s2 == 0.0) continue;  // ||P z|| = 0: the block cannot match
    const double dist2 = total + 1.0 - 2.0 * std::sqrt(s2);
    if (dist2 < eps2) {
      if (value) {
        throw AmbiguousTubeError("tube_value: two blocks match; epsilon too "
                                 "large for this eigenspace geometry");
      }
      value = block.eigenvalue;
    }
  }
  return value;
}

std::optional<double> tube_value(const CMatrix& o, const Context& c,
                                 const PhasePoint& p, double epsilon) {
  return TubeClassifier(o, c, epsilon).classify(p);
}

CoordinateMap::CoordinateMap(const Chart& chart, const ContextChange& ch)
    : n_(chart.dim()), matrix_(n_ * n_) {
  const CMatrix b = chart.base().frame().matrix_in_frame(ch.unitary);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) matrix_[i * n_ + j] = b(i, j);
}

void CoordinateMap::apply(std::span<const double> in, std::span<double> out,
                          bool inverse) const {
  if (in.size() != 2 * n_ || out.size() != 2 * n_) {
    throw DimensionMismatchError("coordinate map: point dimension mismatch");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const cplx m = inverse ? std::conj(matrix_[j * n_ + i]) : matrix_[i * n_ + j];
      acc += m * cplx(in[j], in[j + n_]);
    }
    out[i] = acc.real();
    out[i + n_] = acc.imag();
  }
}

PhasePoint CoordinateMap::apply(const PhasePoint& p, bool inverse) const {
  PhasePoint out;
  out.coords.resize(2 * n_);
  apply(p.coords, out.coords, inverse);
  return out;
}

PhasePoint context_change_map(const Chart& chart, const ContextChange& ch,
                              const PhasePoint& p, bool inverse) {
  return CoordinateMap(chart, ch).apply(p, inverse);
}

}  // namespace ctxval
