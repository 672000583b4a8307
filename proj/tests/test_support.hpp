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

// Random generators and eigensolver-independent oracles shared by the
// test binaries.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "entb/broadcast.hpp"
#include "entb/copier.hpp"
#include "entb/qlinalg.hpp"
#include "entb/qstate.hpp"
#include "entb/search.hpp"

namespace entb::fixtures {

using Rng = std::mt19937_64;

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) = normal(rng);
    for (std::size_t c = r + 1; c < n; ++c) {
      m(r, c) = Complex(normal(rng), normal(rng));
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

/// Convex mixture of `terms` Haar-random pure states with uniform-random
/// weights. Full rank almost surely when terms >= total dimension.
inline DensityOperator random_density(const Dims& dims, std::size_t terms, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  const std::size_t n = total_dim(dims);
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) total += (x = uni(rng));
  ComplexMatrix acc(n);
  for (std::size_t t = 0; t < terms; ++t) {
    const PureState psi = haar_random_state(dims, rng);
    acc += ComplexMatrix::outer(psi.amplitudes()) * Complex(w[t] / total);
  }
  acc *= Complex(1.0 / acc.trace().real());
  return DensityOperator(dims, acc.hermitian_part());
}

/// Random convex mixture of products of random single-qubit states.
inline std::vector<ProductTerm> random_separable_mixture(std::size_t terms, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> rank(1, 2);
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) total += (x = uni(rng) + 1e-3);
  std::vector<ProductTerm> mix;
  for (std::size_t t = 0; t < terms; ++t) {
    mix.push_back({w[t] / total, random_density({2}, rank(rng), rng),
                   random_density({2}, rank(rng), rng)});
  }
  // Force the weights to sum to one within rounding.
  double s = 0.0;
  for (std::size_t t = 0; t + 1 < mix.size(); ++t) s += mix[t].weight;
  mix.back().weight = 1.0 - s;
  return mix;
}

inline CopierSpec random_valid_spec(Rng& rng) {
  std::normal_distribution<double> normal;
  Candidate x{};
  for (auto& v : x) v = normal(rng);
  return CopierSpec::unflatten(project_to_isometry(x));
}

/// Eigenvalues of a 2x2 Hermitian matrix in closed form, ascending.
inline std::array<double, 2> eig2_closed(const ComplexMatrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double half = 0.5 * (a - d);
  const double rad = std::sqrt(half * half + std::norm(m(0, 1)));
  return {0.5 * (a + d) - rad, 0.5 * (a + d) + rad};
}

/// Characteristic polynomial coefficients c[0..n] of det(lambda I - M) with
/// c[n] = 1, by the Faddeev-LeVerrier recursion.
inline std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  ComplexMatrix mk(n);  // M_0 = 0
  const ComplexMatrix id = ComplexMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + id * c[n - k + 1];
    c[n - k] = -(m * mk).trace() / double(k);
  }
  return c;
}

/// Builds the 4x4 real matrix with the given diagonal and symmetric
/// off-diagonal entries, as a two-qubit operator.
inline ComplexMatrix real_symmetric4(std::array<double, 4> diag,
                                     std::initializer_list<std::array<double, 3>> offdiag) {
  ComplexMatrix m(4);
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = diag[i];
  for (const auto& e : offdiag) {
    m(std::size_t(e[0]), std::size_t(e[1])) = e[2];
    m(std::size_t(e[1]), std::size_t(e[0])) = e[2];
  }
  return m;
}

inline DensityOperator bell_projector() {
  const double h = std::sqrt(0.5);
  return DensityOperator::from_pure(PureState({2, 2}, {h, 0.0, 0.0, h}));
}

}  // namespace entb::fixtures
