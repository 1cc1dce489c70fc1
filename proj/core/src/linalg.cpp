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

#include "ctxval/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ctxval {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatchError(std::string(what) + ": " + std::to_string(a) +
                                 " vs " + std::to_string(b));
  }
}

}  // namespace

CVector CVector::basis(std::size_t n, std::size_t i) {
  CVector v(n);
  v[i] = 1.0;
  return v;
}

double CVector::norm() const {
  double s = 0.0;
  for (const cplx& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

CVector CVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidConfigError("cannot normalize the zero vector");
  CVector v = *this;
  for (cplx& z : v.entries_) z /= n;
  return v;
}

CVector& CVector::operator+=(const CVector& o) {
  require_same_dim(dim(), o.dim(), "vector add");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& o) {
  require_same_dim(dim(), o.dim(), "vector sub");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

CVector& CVector::operator*=(cplx z) {
  for (cplx& e : entries_) e *= z;
  return *this;
}

cplx inner(const CVector& a, const CVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  CMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    require_same_dim(row.size(), m.dim(), "matrix row length");
    std::size_t j = 0;
    for (cplx z : row) m(i, j++) = z;
    ++i;
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool CMatrix::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool CMatrix::is_unitary(double tol) const {
  const CMatrix g = adjoint() * (*this);
  return max_abs_diff(g, identity(n_)) <= tol;
}

CVector CMatrix::apply(const CVector& v) const {
  require_same_dim(n_, v.dim(), "matrix apply");
  CVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_dim(n_, o.n_, "matrix add");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_dim(n_, o.n_, "matrix sub");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx z) {
  for (cplx& e : entries_) e *= z;
  return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  require_same_dim(n_, o.n_, "matrix multiply");
  CMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const cplx a = (*this)(i, k);
      if (a == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
    }
  }
  return r;
}

CMatrix outer(const CVector& ket, const CVector& bra) {
  require_same_dim(ket.dim(), bra.dim(), "outer product");
  CMatrix m(ket.dim());
  for (std::size_t i = 0; i < ket.dim(); ++i)
    for (std::size_t j = 0; j < ket.dim(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  CMatrix m(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          m(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  require_same_dim(n_, o.n_, "real matrix multiply");
  RMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

double RMatrix::max_abs() const {
  double m = 0.0;
  for (double e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double RMatrix::determinant() const {
  std::vector<double> a = entries_;
  const std::size_t n = n_;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      det = -det;
    }
    const double d = a[col * n + col];
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
    }
  }
  return det;
}

void RMatrix::apply(std::span<const double> in, std::span<double> out) const {
  require_same_dim(in.size(), n_, "real matrix apply");
  require_same_dim(out.size(), n_, "real matrix apply output");
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * in[j];
    out[i] = s;
  }
}

double max_abs_diff(const RMatrix& a, const RMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "real matrix diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

Frame::Frame(std::vector<CVector> vectors) : vectors_(std::move(vectors)) {
  const std::size_t n = vectors_.size();
  for (const CVector& v : vectors_) require_same_dim(v.dim(), n, "frame vector length");
  const double res = gram_residual();
  if (res > 1e-9) {
    throw NotOrthonormalError("frame gram residual " + std::to_string(res));
  }
}

Frame Frame::standard(std::size_t n) {
  std::vector<CVector> vs;
  vs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) vs.push_back(CVector::basis(n, i));
  return Frame(std::move(vs));
}

CVector Frame::coefficients(const CVector& v) const {
  require_same_dim(v.dim(), dim(), "frame coefficients");
  CVector z(dim());
  for (std::size_t i = 0; i < dim(); ++i) z[i] = inner(vectors_[i], v);
  return z;
}

CMatrix Frame::projector(std::span<const std::size_t> indices) const {
  CMatrix p(dim());
  for (std::size_t idx : indices) p += outer(vectors_[idx], vectors_[idx]);
  return p;
}

CMatrix Frame::matrix_in_frame(const CMatrix& op) const {
  require_same_dim(op.dim(), dim(), "matrix in frame");
  CMatrix m(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const CVector col = op.apply(vectors_[j]);
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = inner(vectors_[i], col);
  }
  return m;
}

double Frame::gram_residual() const {
  double res = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) {
      const cplx g = inner(vectors_[i], vectors_[j]);
      const cplx expect = (i == j) ? cplx(1.0) : cplx(0.0);
      res = std::max(res, std::abs(g - expect));
    }
  return res;
}

std::size_t SpectralForm::dim() const {
  std::size_t n = 0;
  for (const Block& b : blocks) n += b.indices.size();
  return n;
}

double SpectralForm::eigenvalue_of(std::size_t index) const {
  for (const Block& b : blocks)
    for (std::size_t i : b.indices)
      if (i == index) return b.eigenvalue;
  throw DimensionMismatchError("index not covered by spectral form");
}

namespace {

double max_offdiag(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t p = 0; p + 1 < a.dim(); ++p)
    for (std::size_t q = p + 1; q < a.dim(); ++q) m = std::max(m, std::abs(a(p, q)));
  return m;
}

/// Multiply eigenvector columns so the largest-magnitude entry is real
/// positive; ties resolve to the first index.
void canonicalize_phase(CVector& v) {
  std::size_t best = 0;
  double best_mag = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag == 0.0) return;
  const cplx rot = std::conj(v[best]) / best_mag;
  v *= rot;
  v[best] = cplx(std::abs(v[best]), 0.0);
}

}  // namespace

Eigensystem jacobi_eigh(const CMatrix& h, double group_tol) {
  const std::size_t n = h.dim();
  if (!h.is_hermitian()) throw NotHermitianError("jacobi_eigh: input is not Hermitian");

  // Work on the exact Hermitian part so the <=1e-9 input asymmetry cannot bias
  // the rotations.
  CMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

  CMatrix v = CMatrix::identity(n);
  // Relative convergence target, well inside 1e-12 ||H||.
  const double conv_tol = 1e-13 * a.max_abs();
  const double skip_tol = std::numeric_limits<double>::min();

  constexpr int kMaxSweeps = 100;
  bool converged = (n <= 1) || max_offdiag(a) <= conv_tol;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx w = a(p, q);
        const double r = std::abs(w);
        if (r <= skip_tol) continue;
        const cplx phase = w / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary R with columns (e^{i phi} c, -s) and (e^{i phi} s, c);
        // a <- R^dagger a R, v <- v R.
        const cplx cp = phase * c;
        const cplx sp = phase * s;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = cp * akp - s * akq;
          a(k, q) = sp * akp + c * akq;
        }
        const cplx cpc = std::conj(cp);
        const cplx spc = std::conj(sp);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = cpc * apk - s * aqk;
          a(q, k) = spc * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = cp * vkp - s * vkq;
          v(k, q) = sp * vkp + c * vkq;
        }
      }
    }
    converged = max_offdiag(a) <= conv_tol;
  }
  if (!converged) throw NoConvergenceError("jacobi_eigh: no convergence in 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  std::vector<CVector> vectors;
  vectors.reserve(n);
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t col : order) {
    CVector vec(n);
    for (std::size_t row = 0; row < n; ++row) vec[row] = v(row, col);
    canonicalize_phase(vec);
    vectors.push_back(std::move(vec));
    values.push_back(a(col, col).real());
  }

  double max_val = 0.0;
  for (double val : values) max_val = std::max(max_val, std::abs(val));
  const double gap = group_tol * (1.0 + max_val);

  SpectralForm form;
  for (std::size_t i = 0; i < n; ++i) {
    if (form.blocks.empty() || values[i] - form.blocks.back().eigenvalue > gap) {
      form.blocks.push_back({values[i], {i}});
    } else {
      form.blocks.back().indices.push_back(i);
    }
  }
  // Use the block mean so degenerate clusters report one symmetric value.
  std::size_t cursor = 0;
  for (auto& block : form.blocks) {
    double sum = 0.0;
    for (std::size_t k = 0; k < block.indices.size(); ++k) sum += values[cursor + k];
    block.eigenvalue = sum / static_cast<double>(block.indices.size());
    cursor += block.indices.size();
  }

  return Eigensystem{Frame(std::move(vectors)), std::move(form)};
}

double EigenvalueTable::operator()(double x) const {
  if (entries.empty()) throw InvalidConfigError("empty eigenvalue table");
  std::size_t best = 0;
  double best_dist = std::abs(x - entries[0].first);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const double d = std::abs(x - entries[i].first);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (best_dist > match_tol) {
    throw InvalidConfigError("eigenvalue " + std::to_string(x) +
                             " not in table (nearest off by " +
                             std::to_string(best_dist) + ")");
  }
  return entries[best].second;
}

CMatrix apply_fn_spectral(const CMatrix& o, const RealFn& f, double group_tol) {
  const Eigensystem eig = jacobi_eigh(o, group_tol);
  CMatrix result(o.dim());
  for (const auto& block : eig.form.blocks) {
    const double fv = f(block.eigenvalue);
    if (fv == 0.0) continue;
    result += fv * eig.frame.projector(block.indices);
  }
  // Symmetrize away rounding from the projector sums.
  CMatrix herm(o.dim());
  for (std::size_t i = 0; i < o.dim(); ++i)
    for (std::size_t j = 0; j < o.dim(); ++j)
      herm(i, j) = 0.5 * (result(i, j) + std::conj(result(j, i)));
  return herm;
}

RMatrix realify(const CMatrix& u) {
  const std::size_t n = u.dim();
  RMatrix m(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = u(i, j);
      m(i, j) = z.real();
      m(i, j + n) = -z.imag();
      m(i + n, j) = z.imag();
      m(i + n, j + n) = z.real();
    }
  return m;
}

}  // namespace ctxval
