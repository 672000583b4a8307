// Copyright 2026 The entb Authors
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

// Dense complex matrices for the small operators (dimension <= 64) used
// throughout the library: products, Kronecker products, a cyclic Jacobi
// Hermitian eigensolver, PSD square roots, LU determinants and the Bures
// distance.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entb/errors.hpp"

namespace entb {

using Complex = std::complex<double>;

/// Tolerance below which negative eigenvalues are treated as rounding dust
/// and clamped to zero by the PSD operations.
inline constexpr double kPsdClampTolerance = 1e-10;

/// Symmetry tolerance accepted by the eigensolver.
inline constexpr double kHermitianTolerance = 1e-10;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  /// Square zero matrix.
  explicit ComplexMatrix(std::size_t dim) : ComplexMatrix(dim, dim) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw DimensionError("ComplexMatrix: entry count " +
                           std::to_string(entries_.size()) + " != " +
                           std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw DimensionError("ComplexMatrix: ragged initializer");
      }
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  /// |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
      for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::size_t dim() const {
    if (!is_square()) throw DimensionError("ComplexMatrix: not square");
    return rows_;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  std::vector<Complex> column(std::size_t c) const {
    std::vector<Complex> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    }
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0, n = dim(); i < n; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest |M(r,c) - conj(M(c,r))|.
  double hermiticity_error() const {
    double err = 0.0;
    for (std::size_t r = 0, n = dim(); r < n; ++r) {
      for (std::size_t c = r; c < n; ++c) {
        err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
      }
    }
    return err;
  }

  /// (M + M^dagger) / 2.
  ComplexMatrix hermitian_part() const {
    ComplexMatrix out(dim());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
      }
    }
    return out;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : entries_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("ComplexMatrix: product shape mismatch");
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex{}) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
      }
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError("ComplexMatrix: shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Entrywise max |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return d;
}

/// Kronecker product; row index of the result is rA * rows(B) + rB.
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra) {
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const Complex x = a(ra, ca);
      if (x == Complex{}) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb) {
        for (std::size_t cb = 0; cb < b.cols(); ++cb) {
          out(ra * b.rows() + rb, ca * b.cols() + cb) = x * b(rb, cb);
        }
      }
    }
  }
  return out;
}

struct EigResult {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Column j is the unit eigenvector of eigenvalues[j].
  ComplexMatrix eigenvectors;
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Each rotation first removes the phase of the pivot element,
/// then applies the real symmetric Jacobi rotation that annihilates it.
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// 1e-13 * max(1, ||M||_F).
inline EigResult hermitian_eig(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (const double err = m.hermiticity_error(); err > kHermitianTolerance) {
    throw NonHermitianError("hermitian_eig: asymmetry " + std::to_string(err));
  }
  ComplexMatrix a = m.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = 1e-13 * std::max(1.0, a.frobenius_norm());

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) < threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigResult result{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    result.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) result.eigenvectors(k, j) = v(k, order[j]);
  }
  return result;
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eig(m).eigenvalues.front();
}

/// V diag(f(lambda)) V^dagger.
template <typename F>
ComplexMatrix apply_spectral(const EigResult& eig, F&& f) {
  const std::size_t n = eig.eigenvalues.size();
  ComplexMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double fj = f(eig.eigenvalues[j]);
    if (fj == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = eig.eigenvectors(r, j) * fj;
      for (std::size_t c = 0; c < n; ++c) {
        out(r, c) += vr * std::conj(eig.eigenvectors(c, j));
      }
    }
  }
  return out;
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-clamp_tolerance, 0) are clamped to zero; anything more
/// negative throws NotPsdError. Eigenvalues below the rounding floor
/// 8 n eps max|lambda| count as exact zeros: their square roots (~1e-8)
/// would otherwise dominate the error of anything built on top.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m,
                              double clamp_tolerance = kPsdClampTolerance) {
  const EigResult eig = hermitian_eig(m);
  if (eig.eigenvalues.front() < -clamp_tolerance) {
    throw NotPsdError("sqrt_psd: eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
  const double scale =
      std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
  const double floor = 8.0 * double(eig.eigenvalues.size()) *
                       std::numeric_limits<double>::epsilon() * scale;
  return apply_spectral(eig, [floor](double x) { return x <= floor ? 0.0 : std::sqrt(x); });
}

/// Determinant by LU decomposition with partial pivoting.
inline Complex determinant(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix lu = m;
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    }
    if (lu(pivot, col) == Complex{}) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(pivot, c), lu(col, c));
      det = -det;
    }
    det *= lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu(r, col) / lu(col, col);
      for (std::size_t c = col; c < n; ++c) lu(r, c) -= f * lu(col, c);
    }
  }
  return det;
}

/// Leading principal k x k block.
inline ComplexMatrix leading_block(const ComplexMatrix& m, std::size_t k) {
  if (k > m.dim()) throw DimensionError("leading_block: k exceeds dimension");
  ComplexMatrix out(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) out(r, c) = m(r, c);
  }
  return out;
}

/// Root fidelity Tr[(sqrt(A) B sqrt(A))^{1/2}] of two PSD matrices.
inline double root_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("root_fidelity: dimension mismatch");
  const ComplexMatrix sa = sqrt_psd(a);
  const ComplexMatrix inner = (sa * b * sa).hermitian_part();
  return sqrt_psd(inner).trace().real();
}

/// d_B = sqrt(2) * sqrt(1 - F) with F the root fidelity, clamped to
/// [0, sqrt(2)].
inline double bures_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double f = std::clamp(root_fidelity(a, b), 0.0, 1.0);
  return std::sqrt(2.0) * std::sqrt(1.0 - f);
}

}  // namespace entb
