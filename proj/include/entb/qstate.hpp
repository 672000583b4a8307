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

// Pure states and density operators over ordered lists of finite
// subsystems. Subsystem 0 is the most significant digit of the flat basis
// index, so for two factors the index of |m>|mu> is m * dim1 + mu.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entb/errors.hpp"
#include "entb/qlinalg.hpp"

namespace entb {

using Dims = std::vector<std::size_t>;

inline constexpr double kNormTolerance = 1e-12;

inline std::size_t total_dim(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

class PureState {
 public:
  /// Throws RangeError unless the squared norm is within 1e-12 of one.
  PureState(Dims dims, std::vector<Complex> amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (dims_.empty() || total_dim(dims_) != amplitudes_.size()) {
      throw DimensionError("PureState: amplitude count does not match dims");
    }
    if (std::abs(squared_norm() - 1.0) > kNormTolerance) {
      throw RangeError("PureState: squared norm " + std::to_string(squared_norm()));
    }
  }

  /// Rescales to unit norm; throws on the zero vector.
  static PureState normalized(Dims dims, std::vector<Complex> amplitudes) {
    double n2 = 0.0;
    for (const auto& z : amplitudes) n2 += std::norm(z);
    if (n2 == 0.0) throw RangeError("PureState: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : amplitudes) z *= inv;
    return PureState(std::move(dims), std::move(amplitudes));
  }

  static PureState basis(Dims dims, std::size_t index) {
    std::vector<Complex> amps(total_dim(dims));
    amps.at(index) = 1.0;
    return PureState(std::move(dims), std::move(amps));
  }

  const Dims& dims() const { return dims_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return amplitudes_.size(); }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& z : amplitudes_) s += std::norm(z);
    return s;
  }

  friend PureState tensor(const PureState& a, const PureState& b) {
    Dims dims = a.dims_;
    dims.insert(dims.end(), b.dims_.begin(), b.dims_.end());
    std::vector<Complex> amps;
    amps.reserve(a.dim() * b.dim());
    for (const auto& x : a.amplitudes_) {
      for (const auto& y : b.amplitudes_) amps.push_back(x * y);
    }
    return PureState::normalized(std::move(dims), std::move(amps));
  }

 private:
  Dims dims_;
  std::vector<Complex> amplitudes_;
};

/// Tolerances applied when validating a density operator.
struct DensityTolerances {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = kPsdClampTolerance;
};

class DensityOperator {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  DensityOperator(Dims dims, ComplexMatrix matrix, DensityTolerances tol = {})
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    if (dims_.empty() || !matrix_.is_square() || matrix_.dim() != total_dim(dims_)) {
      throw DimensionError("DensityOperator: matrix size does not match dims");
    }
    if (const double err = matrix_.hermiticity_error(); err > tol.hermiticity) {
      throw NonHermitianError("DensityOperator: asymmetry " + std::to_string(err));
    }
    if (const double tr = matrix_.trace().real(); std::abs(tr - 1.0) > tol.trace) {
      throw RangeError("DensityOperator: trace " + std::to_string(tr));
    }
    if (const double lo = min_eigenvalue(matrix_); lo < -tol.min_eigenvalue) {
      throw NotPsdError("DensityOperator: eigenvalue " + std::to_string(lo));
    }
  }

  static DensityOperator from_pure(const PureState& psi) {
    return DensityOperator(psi.dims(), ComplexMatrix::outer(psi.amplitudes()));
  }

  /// Maximally mixed state on the given factors.
  static DensityOperator maximally_mixed(Dims dims) {
    const std::size_t n = total_dim(dims);
    return DensityOperator(std::move(dims),
                           ComplexMatrix::identity(n) * Complex(1.0 / double(n)));
  }

  const Dims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

 private:
  Dims dims_;
  ComplexMatrix matrix_;
};

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(std::move(dims), tensor_product(a.matrix(), b.matrix()));
}

/// alpha|00> + beta|11> with beta = +sqrt(1 - alpha^2).
inline PureState input_state(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw RangeError("input_state: alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  return PureState::normalized({2, 2}, {alpha, 0.0, 0.0, beta});
}

namespace detail {

/// Splits every flat index into (kept index, traced index) for the given
/// subsystem selection. Kept subsystems keep their relative order.
struct IndexSplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
  Dims kept_dims;
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
};

inline IndexSplit split_indices(const Dims& dims, std::span<const std::size_t> keep) {
  std::vector<bool> is_kept(dims.size(), false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= dims.size()) {
      throw DimensionError("subsystem index " + std::to_string(keep[i]) + " out of range");
    }
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw DimensionError("kept subsystem indices must be strictly increasing");
    }
    is_kept[keep[i]] = true;
  }
  IndexSplit split;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (is_kept[s]) {
      split.kept_dims.push_back(dims[s]);
      split.kept_dim *= dims[s];
    } else {
      split.traced_dim *= dims[s];
    }
  }
  const std::size_t n = total_dim(dims);
  split.kept.resize(n);
  split.traced.resize(n);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rem = flat;
    std::size_t k = 0, kmul = 1, t = 0, tmul = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (is_kept[s]) {
        k += digit * kmul;
        kmul *= dims[s];
      } else {
        t += digit * tmul;
        tmul *= dims[s];
      }
    }
    split.kept[flat] = k;
    split.traced[flat] = t;
  }
  return split;
}

}  // namespace detail

/// Reduced operator on the subsystems listed in `keep` (strictly
/// increasing).
inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::span<const std::size_t> keep) {
  const auto split = detail::split_indices(rho.dims(), keep);
  ComplexMatrix out(split.kept_dim);
  const std::size_t n = rho.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (split.traced[i] == split.traced[j]) {
        out(split.kept[i], split.kept[j]) += rho(i, j);
      }
    }
  }
  return DensityOperator(split.kept_dims, std::move(out));
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Reduced operator of |psi><psi| without forming the full projector.
inline DensityOperator reduced_density(const PureState& psi,
                                       std::span<const std::size_t> keep) {
  const auto split = detail::split_indices(psi.dims(), keep);
  // Psi(k, t) = psi[flat]; rho = Psi Psi^dagger.
  ComplexMatrix amps(split.kept_dim, split.traced_dim);
  for (std::size_t flat = 0; flat < psi.dim(); ++flat) {
    amps(split.kept[flat], split.traced[flat]) = psi.amplitudes()[flat];
  }
  return DensityOperator(split.kept_dims, (amps * amps.adjoint()).hermitian_part());
}

inline DensityOperator reduced_density(const PureState& psi,
                                       std::initializer_list<std::size_t> keep) {
  return reduced_density(psi, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Reorders subsystems: factor s of the result is factor order[s] of rho.
inline DensityOperator permute_subsystems(const DensityOperator& rho,
                                          std::span<const std::size_t> order) {
  const Dims& dims = rho.dims();
  if (order.size() != dims.size()) throw DimensionError("permute_subsystems: arity");
  std::vector<bool> seen(dims.size(), false);
  Dims new_dims(dims.size());
  for (std::size_t s = 0; s < order.size(); ++s) {
    if (order[s] >= dims.size() || seen[order[s]]) {
      throw DimensionError("permute_subsystems: not a permutation");
    }
    seen[order[s]] = true;
    new_dims[s] = dims[order[s]];
  }
  const std::size_t n = rho.dim();
  // Map each old flat index to its new flat index.
  std::vector<std::size_t> remap(n);
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rem = flat;
    for (std::size_t s = dims.size(); s-- > 0;) {
      digits[s] = rem % dims[s];
      rem /= dims[s];
    }
    std::size_t idx = 0;
    for (std::size_t s = 0; s < order.size(); ++s) idx = idx * new_dims[s] + digits[order[s]];
    remap[flat] = idx;
  }
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(remap[i], remap[j]) = rho(i, j);
  }
  return DensityOperator(std::move(new_dims), std::move(out));
}

inline DensityOperator permute_subsystems(const DensityOperator& rho,
                                          std::initializer_list<std::size_t> order) {
  return permute_subsystems(rho, std::span<const std::size_t>(order.begin(), order.size()));
}

/// Transpose on the second spin of a two-qubit operator:
/// PT(m mu, n nu) = rho(m nu, n mu).
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError("partial_transpose: expected a 4x4 two-qubit matrix");
  }
  ComplexMatrix out(4);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t mu = 0; mu < 2; ++mu) {
      for (std::size_t n = 0; n < 2; ++n) {
        for (std::size_t nu = 0; nu < 2; ++nu) {
          out(2 * m + mu, 2 * n + nu) = rho(2 * m + nu, 2 * n + mu);
        }
      }
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityOperator& rho) {
  if (rho.dims() != Dims{2, 2}) {
    throw DimensionError("partial_transpose: requires dims [2, 2]");
  }
  return partial_transpose(rho.matrix());
}

inline double bures_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dims() != b.dims()) throw DimensionError("bures_distance: dims differ");
  return bures_distance(a.matrix(), b.matrix());
}

/// Haar-random pure state on `dims`: i.i.d. standard normal real and
/// imaginary parts, normalized.
template <typename Rng>
PureState haar_random_state(const Dims& dims, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> amps(total_dim(dims));
  for (auto& z : amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return PureState::normalized(dims, std::move(amps));
}

}  // namespace entb
