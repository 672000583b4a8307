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

// Local broadcasting of entanglement. Two parties share alpha|00> + beta|11>
// on (aI, aII); each runs an identical local copier on its half. After the
// copier ancillas are discarded the four output spins are ordered
// (aI, bI, aII, bII). The locally produced pairs aI-bI and aII-bII should be
// separable while the nonlocal pairs aI-bII and aII-bI stay entangled.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "entb/copier.hpp"
#include "entb/errors.hpp"
#include "entb/qlinalg.hpp"
#include "entb/qstate.hpp"
#include "entb/separability.hpp"

namespace entb {

enum class Pair { LocalI, LocalII, NonlocalI, NonlocalII };

inline constexpr std::array<Pair, 4> kAllPairs = {Pair::LocalI, Pair::LocalII,
                                                  Pair::NonlocalI, Pair::NonlocalII};

inline std::string_view to_string(Pair p) {
  switch (p) {
    case Pair::LocalI: return "aI-bI";
    case Pair::LocalII: return "aII-bII";
    case Pair::NonlocalI: return "aI-bII";
    case Pair::NonlocalII: return "aII-bI";
  }
  return "?";
}

inline bool is_local(Pair p) { return p == Pair::LocalI || p == Pair::LocalII; }

struct BroadcastOutcome {
  /// Output spins ordered (aI, bI, aII, bII).
  DensityOperator rho_out_4;
  /// Two-qubit reductions, each ordered (a-spin, b-spin) as in its label.
  std::map<Pair, DensityOperator> pair_reductions;
  std::map<Pair, SeparabilityReport> reports;

  const DensityOperator& reduction(Pair p) const { return pair_reductions.at(p); }
  const SeparabilityReport& report(Pair p) const { return reports.at(p); }

  /// Local pairs separable (not inside the boundary band) and nonlocal
  /// pairs entangled.
  bool broadcasting_holds() const {
    for (Pair p : kAllPairs) {
      const Verdict v = report(p).verdict;
      if (is_local(p) ? v != Verdict::Separable : v != Verdict::Inseparable) return false;
    }
    return true;
  }
};

namespace detail {

inline BroadcastOutcome make_outcome(DensityOperator rho4, double tolerance) {
  BroadcastOutcome out{std::move(rho4), {}, {}};
  const auto& rho = out.rho_out_4;
  out.pair_reductions.emplace(Pair::LocalI, partial_trace(rho, {0, 1}));
  out.pair_reductions.emplace(Pair::LocalII, partial_trace(rho, {2, 3}));
  out.pair_reductions.emplace(Pair::NonlocalI, partial_trace(rho, {0, 3}));
  // keep {1, 2} yields (bI, aII); swap to (aII, bI).
  out.pair_reductions.emplace(Pair::NonlocalII,
                              permute_subsystems(partial_trace(rho, {1, 2}), {1, 0}));
  for (Pair p : kAllPairs) out.reports.emplace(p, is_separable(out.reduction(p), tolerance));
  return out;
}

/// 4-spin output (aI, bI, aII, bII) for a pure two-qubit input on (aI, aII).
inline ComplexMatrix broadcast_output_matrix(const PureState& input, const CopierSpec& spec) {
  // [aI, aII] -> [aI, bI, xI, aII] -> [aI, bI, xI, aII, bII, xII]
  const PureState once = apply_local_copier(input, 0, spec);
  const PureState twice = apply_local_copier(once, 3, spec);
  return reduced_density(twice, {0, 1, 3, 4}).matrix();
}

inline void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw RangeError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

}  // namespace detail

/// Full numeric pipeline for an arbitrary pure input on (aI, aII).
inline BroadcastOutcome broadcast_pure(const PureState& input, const CopierSpec& spec,
                                       double tolerance = kDefaultVerdictTolerance) {
  if (input.dims() != Dims{2, 2}) throw DimensionError("broadcast_pure: input must be [2, 2]");
  return detail::make_outcome(
      DensityOperator({2, 2, 2, 2}, detail::broadcast_output_matrix(input, spec)), tolerance);
}

inline BroadcastOutcome broadcast_numeric(double alpha, const CopierSpec& spec,
                                          double tolerance = kDefaultVerdictTolerance) {
  detail::require_alpha(alpha);
  validate(spec);
  return broadcast_pure(input_state(alpha), spec, tolerance);
}

/// Closed-form local pair of the universal copier:
/// (2a^2/3)|00><00| + (1/3)|+><+| + (2b^2/3)|11><11|.
inline DensityOperator local_output_closed(double alpha) {
  detail::require_alpha(alpha);
  const double a2 = alpha * alpha;
  const double b2 = 1.0 - a2;
  ComplexMatrix m(4);
  m(0, 0) = 2.0 * a2 / 3.0;
  m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = 1.0 / 6.0;
  m(3, 3) = 2.0 * b2 / 3.0;
  return DensityOperator({2, 2}, std::move(m));
}

/// Closed-form nonlocal pair of the universal copier.
inline DensityOperator nonlocal_output_closed(double alpha) {
  detail::require_alpha(alpha);
  const double a2 = alpha * alpha;
  const double b2 = 1.0 - a2;
  const double beta = std::sqrt(b2);
  ComplexMatrix m(4);
  m(0, 0) = (24.0 * a2 + 1.0) / 36.0;
  m(1, 1) = m(2, 2) = 5.0 / 36.0;
  m(3, 3) = (24.0 * b2 + 1.0) / 36.0;
  m(0, 3) = m(3, 0) = 4.0 * alpha * beta / 9.0;
  return DensityOperator({2, 2}, std::move(m));
}

enum class PairKind { Local, Nonlocal };

/// Minimum partial-transpose eigenvalue of the aI-bI (Local) or aI-bII
/// (Nonlocal) reduction at input weight alpha^2.
inline double min_pt_eigenvalue_at(PairKind kind, double alpha_sq, const CopierSpec& spec) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
    throw RangeError("alpha^2 must lie in [0, 1]");
  }
  const auto outcome = broadcast_numeric(std::sqrt(alpha_sq), spec);
  return outcome.report(kind == PairKind::Local ? Pair::LocalI : Pair::NonlocalI)
      .min_pt_eigenvalue;
}

/// Where the minimum partial-transpose eigenvalue changes sign as a
/// function of alpha^2. Endpoint states sit on the PPT boundary and are
/// therefore separable; the numeric bounds are open-interval estimates.
struct SeparabilityWindow {
  enum class Kind { Interval, AlwaysSeparable, AlwaysInseparable };
  Kind kind = Kind::Interval;
  double alpha_sq_low = 0.0;
  double alpha_sq_high = 1.0;
  /// For Interval: true when the pair is entangled strictly between the
  /// bounds (nonlocal pair), false when it is entangled outside them
  /// (local pair).
  bool inseparable_inside = false;
};

inline constexpr std::size_t kWindowScanPoints = 1001;
inline constexpr double kWindowBracket = 1e-10;

/// Scans alpha^2 over [0, 1], requires exactly one sign change in each half
/// (or none at all), and bisects each change on the numeric pipeline until
/// the bracket is narrower than 1e-10.
inline SeparabilityWindow separability_window(PairKind kind, const CopierSpec& spec) {
  validate(spec);
  auto f = [&](double x) { return min_pt_eigenvalue_at(kind, x, spec); };

  std::vector<double> grid(kWindowScanPoints);
  std::vector<bool> negative(kWindowScanPoints);
  for (std::size_t i = 0; i < kWindowScanPoints; ++i) {
    grid[i] = double(i) / double(kWindowScanPoints - 1);
    negative[i] = f(grid[i]) < 0.0;
  }
  const std::size_t mid = (kWindowScanPoints - 1) / 2;
  std::vector<std::size_t> low_changes, high_changes;
  for (std::size_t i = 0; i + 1 < kWindowScanPoints; ++i) {
    if (negative[i] != negative[i + 1]) (i < mid ? low_changes : high_changes).push_back(i);
  }

  SeparabilityWindow w;
  if (low_changes.empty() && high_changes.empty()) {
    w.kind = negative[0] ? SeparabilityWindow::Kind::AlwaysInseparable
                         : SeparabilityWindow::Kind::AlwaysSeparable;
    return w;
  }
  if (low_changes.size() != 1 || high_changes.size() != 1) {
    throw NoSignChange("separability_window: expected one sign change per half, found " +
                       std::to_string(low_changes.size()) + " and " +
                       std::to_string(high_changes.size()));
  }
  auto bisect = [&](std::size_t i) {
    double lo = grid[i], hi = grid[i + 1];
    const bool lo_negative = negative[i];
    while (hi - lo >= kWindowBracket) {
      const double m = 0.5 * (lo + hi);
      ((f(m) < 0.0) == lo_negative ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
  };
  w.kind = SeparabilityWindow::Kind::Interval;
  w.alpha_sq_low = bisect(low_changes.front());
  w.alpha_sq_high = bisect(high_changes.front());
  w.inseparable_inside = negative[mid];
  return w;
}

/// One term w * rhoA (x) rhoB of a separable input on (aI, aII).
struct ProductTerm {
  double weight;
  DensityOperator rho_a;
  DensityOperator rho_b;
};

/// Runs the pipeline on a separable input. Each single-qubit factor is
/// split into its eigenvectors, and the resulting pure product branches go
/// through the pure-state path; the outputs are mixed with their weights.
inline BroadcastOutcome broadcast_separable(std::span<const ProductTerm> mixture,
                                            const CopierSpec& spec,
                                            double tolerance = kDefaultVerdictTolerance) {
  validate(spec);
  if (mixture.empty()) throw BadWeightsError("broadcast_separable: empty mixture");
  double total = 0.0;
  for (const auto& term : mixture) {
    if (!(term.weight >= 0.0)) throw BadWeightsError("broadcast_separable: negative weight");
    if (term.rho_a.dims() != Dims{2} || term.rho_b.dims() != Dims{2}) {
      throw DimensionError("broadcast_separable: factors must be single qubits");
    }
    total += term.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw BadWeightsError("broadcast_separable: weights sum to " + std::to_string(total));
  }

  ComplexMatrix acc(16);
  for (const auto& term : mixture) {
    if (term.weight == 0.0) continue;
    const EigResult ea = hermitian_eig(term.rho_a.matrix());
    const EigResult eb = hermitian_eig(term.rho_b.matrix());
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        const double p = term.weight * std::max(ea.eigenvalues[i], 0.0) *
                         std::max(eb.eigenvalues[j], 0.0);
        if (p == 0.0) continue;
        const PureState branch = tensor(PureState::normalized({2}, ea.eigenvectors.column(i)),
                                        PureState::normalized({2}, eb.eigenvectors.column(j)));
        acc += detail::broadcast_output_matrix(branch, spec) * Complex(p);
      }
    }
  }
  // Clamped eigenvalues can shift the trace by rounding-level amounts.
  acc *= Complex(1.0 / acc.trace().real());
  return detail::make_outcome(DensityOperator({2, 2, 2, 2}, acc.hermitian_part()), tolerance);
}

/// Amplitude tables of the four-party output.
struct OmegaTables {
  using Omega = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;
  /// omega[i][j][k][l] = alpha C[i][k] C[j][l] + beta D[i][k] D[j][l]: the
  /// amplitude of |R_i>_{aI bI} |R_j>_{aII bII} |Z_k>_{xI} |Z_l>_{xII}.
  Omega omega{};
  /// Local pair aI-bI in the |R_i> basis:
  /// sum_k alpha^2 C[i][k] C[j][k] + beta^2 D[i][k] D[j][k].
  ComplexMatrix xi;
  /// Nonlocal pair aI-bII in the |R_i> basis, contracted from omega.
  ComplexMatrix omega_pair;
};

inline OmegaTables appendix_tables(double alpha, const CopierSpec& spec) {
  detail::require_alpha(alpha);
  validate(spec);
  const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  OmegaTables t;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l)
          t.omega[i][j][k][l] =
              alpha * spec.c[i][k] * spec.c[j][l] + beta * spec.d[i][k] * spec.d[j][l];

  t.xi = ComplexMatrix(4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        s += alpha * alpha * spec.c[i][k] * spec.c[j][k] +
             beta * beta * spec.d[i][k] * spec.d[j][k];
      }
      t.xi(i, j) = s;
    }
  }

  // rho_{aI bII}[(a, b'), (a2, b2')] =
  //   sum_{bI, aII, k, l} omega[R(a, bI)][R(aII, b')][k][l]
  //                     * omega[R(a2, bI)][R(aII, b2')][k][l]
  auto r = [](std::size_t first, std::size_t second) { return 2 * first + second; };
  t.omega_pair = ComplexMatrix(4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2) {
          double s = 0.0;
          for (std::size_t b_i = 0; b_i < 2; ++b_i)
            for (std::size_t a_ii = 0; a_ii < 2; ++a_ii) {
              const auto& lhs = t.omega[r(a, b_i)][r(a_ii, b)];
              const auto& rhs = t.omega[r(a2, b_i)][r(a_ii, b2)];
              for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) s += lhs[k][l] * rhs[k][l];
            }
          t.omega_pair(r(a, b), r(a2, b2)) = s;
        }
  return t;
}

/// One entry of the hand-expanded nonlocal table, compared against the
/// contraction. Indices are 1-based |R_i> labels.
struct PrintedEntryCheck {
  int row = 0;
  int col = 0;
  double printed = 0.0;
  double derived = 0.0;
  bool agrees = false;
};

namespace detail {

/// Hand-expanded form of the nonlocal pair: entry (row, col) is
/// sum_{kl} over four products omega^{(p)}_{kl} omega^{(q)}_{kl}, with each
/// factor given by its 1-based (i, j) superscript. The (3,1) entry's
/// malformed superscript is read as (1,3).
struct PrintedTerm {
  int row, col;
  std::array<std::array<int, 4>, 4> factors;  // {p_i, p_j, q_i, q_j}
};

inline constexpr std::array<PrintedTerm, 10> kPrintedOmega = {{
    {1, 1, {{{1, 1, 1, 1}, {2, 1, 2, 1}, {1, 3, 1, 3}, {2, 3, 2, 3}}}},
    {2, 2, {{{1, 2, 1, 2}, {2, 2, 2, 2}, {1, 4, 1, 4}, {2, 4, 2, 4}}}},
    {3, 3, {{{3, 1, 3, 1}, {4, 1, 4, 1}, {3, 3, 3, 3}, {4, 3, 4, 3}}}},
    {4, 4, {{{4, 2, 4, 2}, {3, 2, 3, 2}, {3, 4, 3, 4}, {4, 4, 4, 4}}}},
    {2, 1, {{{2, 2, 2, 1}, {1, 2, 1, 1}, {1, 4, 1, 3}, {2, 4, 2, 3}}}},
    {3, 1, {{{3, 1, 1, 1}, {4, 1, 2, 1}, {3, 3, 1, 3}, {4, 3, 2, 3}}}},
    {4, 1, {{{3, 2, 1, 1}, {4, 2, 2, 1}, {3, 4, 1, 3}, {4, 4, 2, 3}}}},
    {3, 2, {{{1, 2, 3, 1}, {2, 2, 4, 1}, {1, 4, 3, 3}, {2, 4, 4, 3}}}},
    {4, 2, {{{1, 2, 3, 1}, {2, 2, 4, 2}, {1, 4, 3, 4}, {2, 4, 4, 4}}}},
    {3, 4, {{{3, 1, 3, 2}, {4, 1, 4, 2}, {3, 3, 3, 4}, {4, 3, 4, 4}}}},
}};

}  // namespace detail

/// Evaluates the hand expansion of each independent nonlocal entry and
/// compares it with the contracted table at 1e-12.
inline std::vector<PrintedEntryCheck> compare_printed_omega(const OmegaTables& t) {
  std::vector<PrintedEntryCheck> checks;
  for (const auto& term : detail::kPrintedOmega) {
    double s = 0.0;
    for (const auto& f : term.factors) {
      const auto& p = t.omega[f[0] - 1][f[1] - 1];
      const auto& q = t.omega[f[2] - 1][f[3] - 1];
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) s += p[k][l] * q[k][l];
    }
    const double derived = t.omega_pair(term.row - 1, term.col - 1).real();
    checks.push_back({term.row, term.col, s, derived, std::abs(s - derived) <= 1e-12});
  }
  return checks;
}

}  // namespace entb
