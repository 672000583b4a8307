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

// Peres-Horodecki separability test for two spins-1/2. A two-qubit state is
// entangled iff its partial transpose has a negative eigenvalue; for a
// nonsingular partial transpose this is equivalent to W3 < 0 or W4 < 0,
// where Wk is the k-th leading principal minor.

#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "entb/qlinalg.hpp"
#include "entb/qstate.hpp"

namespace entb {

inline constexpr double kDefaultVerdictTolerance = 1e-10;

enum class Verdict { Separable, Inseparable, Boundary };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Separable: return "Separable";
    case Verdict::Inseparable: return "Inseparable";
    case Verdict::Boundary: return "Boundary";
  }
  return "?";
}

/// Maps a minimum partial-transpose eigenvalue onto the tri-state verdict.
inline Verdict classify(double min_pt_eigenvalue, double tolerance) {
  if (min_pt_eigenvalue < -tolerance) return Verdict::Inseparable;
  if (std::abs(min_pt_eigenvalue) <= tolerance) return Verdict::Boundary;
  return Verdict::Separable;
}

struct SeparabilityReport {
  double min_pt_eigenvalue = 0.0;
  /// Leading principal minors W1..W4 of the partial transpose.
  std::array<double, 4> w{};
  Verdict verdict = Verdict::Boundary;
  double tolerance = kDefaultVerdictTolerance;

  /// Verdict from the determinant route alone: entangled iff W3 or W4 is
  /// below -tolerance. Only meaningful for a nonsingular partial transpose.
  Verdict determinant_verdict() const {
    return (w[2] < -tolerance || w[3] < -tolerance) ? Verdict::Inseparable
                                                    : Verdict::Separable;
  }
};

inline std::array<double, 4> w_determinants(const ComplexMatrix& pt) {
  std::array<double, 4> w{};
  w[0] = pt(0, 0).real();
  for (std::size_t k = 2; k <= 4; ++k) w[k - 1] = determinant(leading_block(pt, k)).real();
  return w;
}

/// W1..W4 of the partial transpose of a two-qubit state.
inline std::array<double, 4> w_determinants(const DensityOperator& rho) {
  return w_determinants(partial_transpose(rho));
}

inline SeparabilityReport is_separable(const DensityOperator& rho,
                                       double tolerance = kDefaultVerdictTolerance) {
  const ComplexMatrix pt = partial_transpose(rho);
  SeparabilityReport report;
  report.tolerance = tolerance;
  report.min_pt_eigenvalue = min_eigenvalue(pt);
  report.w = w_determinants(pt);
  report.verdict = classify(report.min_pt_eigenvalue, tolerance);
  return report;
}

}  // namespace entb
