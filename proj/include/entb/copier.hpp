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

// Local quantum copiers for a single spin-1/2, modeled as isometries from
// the input qubit into (original a) x (copy b) x (copier ancilla x, dim 4):
//
//   |0> -> sum_{i,k} C[i][k] |R_i>|Z_k>,   |1> -> sum_{i,k} D[i][k] |R_i>|Z_k>
//
// with |R_0..3> = |00>, |01>, |10>, |11> on (a, b). The blank copy and the
// copier's initial state never enter the output, so they are not modeled.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "entb/errors.hpp"
#include "entb/qlinalg.hpp"
#include "entb/qstate.hpp"

namespace entb {

inline constexpr double kSpecTolerance = 1e-12;

/// Real amplitude tables, zero-based: c[i][k] is the amplitude of
/// |R_i>|Z_k> in the image of |0>, d[i][k] likewise for |1>.
struct CopierSpec {
  using Table = std::array<std::array<double, 4>, 4>;
  Table c{};
  Table d{};

  /// c (row-major) followed by d.
  std::array<double, 32> flatten() const {
    std::array<double, 32> out{};
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t k = 0; k < 4; ++k) {
        out[4 * i + k] = c[i][k];
        out[16 + 4 * i + k] = d[i][k];
      }
    }
    return out;
  }

  static CopierSpec unflatten(std::span<const double, 32> x) {
    CopierSpec s;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t k = 0; k < 4; ++k) {
        s.c[i][k] = x[4 * i + k];
        s.d[i][k] = x[16 + 4 * i + k];
      }
    }
    return s;
  }

  friend bool operator==(const CopierSpec&, const CopierSpec&) = default;
};

/// Deviation of a spec from the isometry conditions, plus a flag for the
/// alternative per-row reading (sum_k C^2 = sum_k D^2 = sum_k C D = 1 for
/// every i), which no isometry can satisfy.
struct UnitarityResiduals {
  double norm_c = 0.0;   // sum C^2 - 1
  double norm_d = 0.0;   // sum D^2 - 1
  double overlap = 0.0;  // sum C D
  bool satisfies_per_row_form = false;

  double max_abs() const {
    return std::max({std::abs(norm_c), std::abs(norm_d), std::abs(overlap)});
  }
  double squared_sum() const {
    return norm_c * norm_c + norm_d * norm_d + overlap * overlap;
  }
};

inline UnitarityResiduals unitarity_residuals(const CopierSpec& spec) {
  UnitarityResiduals r;
  double cc = 0.0, dd = 0.0, cd = 0.0;
  bool per_row = true;
  for (std::size_t i = 0; i < 4; ++i) {
    double rc = 0.0, rd = 0.0, rcd = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      rc += spec.c[i][k] * spec.c[i][k];
      rd += spec.d[i][k] * spec.d[i][k];
      rcd += spec.c[i][k] * spec.d[i][k];
    }
    cc += rc;
    dd += rd;
    cd += rcd;
    per_row = per_row && std::abs(rc - 1.0) <= kSpecTolerance &&
              std::abs(rd - 1.0) <= kSpecTolerance && std::abs(rcd - 1.0) <= kSpecTolerance;
  }
  r.norm_c = cc - 1.0;
  r.norm_d = dd - 1.0;
  r.overlap = cd;
  r.satisfies_per_row_form = per_row;
  return r;
}

inline void validate(const CopierSpec& spec, double tolerance = kSpecTolerance) {
  const auto r = unitarity_residuals(spec);
  if (r.max_abs() > tolerance) {
    throw InvalidSpecError("copier spec is not an isometry: residuals (" +
                           std::to_string(r.norm_c) + ", " + std::to_string(r.norm_d) +
                           ", " + std::to_string(r.overlap) + ")");
  }
}

/// Universal symmetric copier:
///   |0> -> sqrt(2/3)|00>|Z1> + sqrt(1/3)|+>|Z2>
///   |1> -> sqrt(2/3)|11>|Z2> + sqrt(1/3)|+>|Z1>
/// with |+> = (|01> + |10>)/sqrt(2).
inline CopierSpec uqcm_spec() {
  const double big = std::sqrt(2.0 / 3.0);
  const double small = std::sqrt(1.0 / 6.0);
  CopierSpec s;
  s.c[0][0] = big;
  s.c[1][1] = small;
  s.c[2][1] = small;
  s.d[3][1] = big;
  s.d[1][0] = small;
  s.d[2][0] = small;
  return s;
}

/// 16 x 2 isometry; row (a * 2 + b) * 4 + k, column = input basis state.
inline ComplexMatrix copier_isometry(const CopierSpec& spec) {
  validate(spec);
  ComplexMatrix v(16, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      v(4 * i + k, 0) = spec.c[i][k];
      v(4 * i + k, 1) = spec.d[i][k];
    }
  }
  return v;
}

/// Applies the copier to qubit `target`; the copy (dim 2) and ancilla
/// (dim 4) factors are inserted directly after the target factor.
inline PureState apply_local_copier(const PureState& state, std::size_t target,
                                    const CopierSpec& spec) {
  const Dims& dims = state.dims();
  if (target >= dims.size() || dims[target] != 2) {
    throw DimensionError("apply_local_copier: target factor must be a qubit");
  }
  const ComplexMatrix iso = copier_isometry(spec);
  std::size_t pre = 1, post = 1;
  for (std::size_t s = 0; s < target; ++s) pre *= dims[s];
  for (std::size_t s = target + 1; s < dims.size(); ++s) post *= dims[s];

  const auto in = state.amplitudes();
  std::vector<Complex> out(pre * 16 * post);
  for (std::size_t p = 0; p < pre; ++p) {
    for (std::size_t t = 0; t < 2; ++t) {
      for (std::size_t q = 0; q < post; ++q) {
        const Complex amp = in[(p * 2 + t) * post + q];
        if (amp == Complex{}) continue;
        for (std::size_t row = 0; row < 16; ++row) {
          out[(p * 16 + row) * post + q] += iso(row, t) * amp;
        }
      }
    }
  }
  Dims new_dims = dims;
  new_dims.insert(new_dims.begin() + std::ptrdiff_t(target) + 1, {2, 4});
  return PureState::normalized(std::move(new_dims), std::move(out));
}

/// Mean, sample standard deviation and extremes of a set of samples.
struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

inline SampleStats summarize(std::span<const double> xs) {
  SampleStats s;
  if (xs.empty()) return s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / double(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / double(xs.size() - 1));
  }
  return s;
}

/// Copier quality over random pure inputs psi.
struct CopierQualityReport {
  std::size_t samples = 0;
  /// max over samples of ||rho_a - rho_b||_F (original vs copy).
  double max_marginal_asymmetry = 0.0;
  /// d_B(rho_a, |psi><psi|) and d_B(rho_b, |psi><psi|).
  SampleStats original_distance;
  SampleStats copy_distance;
  /// d_B(rho_ab, |psi><psi| x |psi><psi|); its minimum must stay positive.
  SampleStats pair_distance;

  double no_broadcasting_witness() const { return pair_distance.min; }
};

inline CopierQualityReport copier_quality_report(const CopierSpec& spec, std::size_t samples,
                                                 std::uint64_t seed) {
  if (samples < 2) throw RangeError("copier_quality_report: need at least 2 samples");
  validate(spec);
  std::mt19937_64 rng(seed);
  std::vector<double> da, db, dab;
  CopierQualityReport report;
  report.samples = samples;
  for (std::size_t n = 0; n < samples; ++n) {
    const PureState psi = haar_random_state({2}, rng);
    const PureState out = apply_local_copier(psi, 0, spec);
    const DensityOperator rho_ab = reduced_density(out, {0, 1});
    const DensityOperator rho_a = partial_trace(rho_ab, {0});
    const DensityOperator rho_b = partial_trace(rho_ab, {1});
    const DensityOperator ideal = DensityOperator::from_pure(psi);

    report.max_marginal_asymmetry = std::max(
        report.max_marginal_asymmetry, (rho_a.matrix() - rho_b.matrix()).frobenius_norm());
    da.push_back(bures_distance(rho_a, ideal));
    db.push_back(bures_distance(rho_b, ideal));
    dab.push_back(bures_distance(rho_ab, tensor(ideal, ideal)));
  }
  report.original_distance = summarize(da);
  report.copy_distance = summarize(db);
  report.pair_distance = summarize(dab);
  return report;
}

}  // namespace entb
