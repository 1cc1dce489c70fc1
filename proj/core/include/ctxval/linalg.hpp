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

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "ctxval/errors.hpp"

namespace ctxval {

using cplx = std::complex<double>;

/// Dense complex vector in C^n. Sized for small n (2 <= n <= 16).
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t n) : entries_(n) {}
  CVector(std::initializer_list<cplx> entries) : entries_(entries) {}
  explicit CVector(std::vector<cplx> entries) : entries_(std::move(entries)) {}

  static CVector basis(std::size_t n, std::size_t i);

  std::size_t dim() const { return entries_.size(); }
  cplx& operator[](std::size_t i) { return entries_[i]; }
  const cplx& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<cplx>& entries() const { return entries_; }

  double norm() const;
  CVector normalized() const;

  CVector& operator+=(const CVector& o);
  CVector& operator-=(const CVector& o);
  CVector& operator*=(cplx z);
  friend CVector operator+(CVector a, const CVector& b) { return a += b; }
  friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
  friend CVector operator*(cplx z, CVector v) { return v *= z; }

 private:
  std::vector<cplx> entries_;
};

/// <a|b>, conjugate-linear in the first argument.
cplx inner(const CVector& a, const CVector& b);

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  static CMatrix identity(std::size_t n);
  static CMatrix zero(std::size_t n) { return CMatrix(n); }
  static CMatrix diagonal(std::span<const double> values);
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t dim() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }

  CMatrix adjoint() const;
  double max_abs() const;
  bool is_hermitian(double tol = 1e-9) const;
  bool is_unitary(double tol = 1e-9) const;

  CVector apply(const CVector& v) const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx z);
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cplx z, CMatrix m) { return m *= z; }
  CMatrix operator*(const CMatrix& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> entries_;
};

/// |ket><bra|
CMatrix outer(const CVector& ket, const CVector& bra);
CMatrix kron(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Dense square real matrix, row-major.
class RMatrix {
 public:
  RMatrix() = default;
  explicit RMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  static RMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const double& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }

  RMatrix transpose() const;
  RMatrix operator*(const RMatrix& o) const;
  double max_abs() const;

  /// LU with partial pivoting.
  double determinant() const;

  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

double max_abs_diff(const RMatrix& a, const RMatrix& b);

/// Ordered orthonormal basis of C^n.
class Frame {
 public:
  Frame() = default;
  /// Validates |<v_i|v_j> - delta_ij| <= 1e-9.
  explicit Frame(std::vector<CVector> vectors);
  static Frame standard(std::size_t n);

  std::size_t dim() const { return vectors_.size(); }
  const CVector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<CVector>& vectors() const { return vectors_; }

  /// z_i = <f_i|v>.
  CVector coefficients(const CVector& v) const;
  /// sum_{i in indices} |f_i><f_i|.
  CMatrix projector(std::span<const std::size_t> indices) const;
  /// <f_i|op|f_j>.
  CMatrix matrix_in_frame(const CMatrix& op) const;
  double gram_residual() const;

 private:
  std::vector<CVector> vectors_;
};

/// Eigenvalues grouped into (near-)degenerate blocks; indices refer to the
/// associated eigenframe. Block eigenvalues are strictly increasing.
struct SpectralForm {
  struct Block {
    double eigenvalue = 0.0;
    std::vector<std::size_t> indices;
  };
  std::vector<Block> blocks;

  std::size_t dim() const;
  double eigenvalue_of(std::size_t index) const;
};

struct Eigensystem {
  Frame frame;
  SpectralForm form;
};

inline constexpr double kDefaultGroupTol = 1e-8;

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations with a
/// deterministic sweep order (row-major upper triangle). Eigenvalues are
/// returned ascending, grouped into blocks where |l_i - l_j| <= group_tol *
/// (1 + max|l|); each eigenvector is phase-rotated so its largest-magnitude
/// entry is real positive.
Eigensystem jacobi_eigh(const CMatrix& h, double group_tol = kDefaultGroupTol);

using RealFn = std::function<double(double)>;

/// Finite eigenvalue -> value table. Lookup matches the nearest key and
/// requires it within match_tol; exact table values avoid float hazards at
/// the branch points of piecewise functions.
struct EigenvalueTable {
  std::vector<std::pair<double, double>> entries;
  double match_tol = 1e-6;
  double operator()(double x) const;
};

/// f(O) = sum_k f(o_k) P_k over the jacobi_eigh blocks of a Hermitian O.
CMatrix apply_fn_spectral(const CMatrix& o, const RealFn& f,
                          double group_tol = kDefaultGroupTol);

/// The real 2n x 2n matrix [[Re U, -Im U], [Im U, Re U]] acting on the
/// stacked (x, y) coordinates.
RMatrix realify(const CMatrix& u);

}  // namespace ctxval
