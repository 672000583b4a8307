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

// Search over real-amplitude copiers for specs that broadcast entanglement
// at a fixed input weight alpha^2: local pair separable, nonlocal pair
// entangled by at least `margin`, isometry conditions satisfied.
//
// The score is a weighted sum of penalties that vanishes exactly on the
// feasible set. It is minimized by a derivative-free coordinate pattern
// search from seeded random restarts; the eigenvalue hinges are not smooth,
// so no gradients are used.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "entb/copier.hpp"
#include "entb/errors.hpp"
#include "entb/qlinalg.hpp"
#include "entb/qstate.hpp"

namespace entb {

using Candidate = std::array<double, 32>;

struct PenaltyWeights {
  double unitarity = 1.0;
  double local_separability = 1.0;
  double nonlocal_inseparability = 1.0;
  /// Original/copy marginal asymmetry; zero disables the term.
  double symmetry = 1.0;

  double total() const {
    return unitarity + local_separability + nonlocal_inseparability + symmetry;
  }
};

struct SearchConfig {
  double alpha_sq = 0.5;
  std::size_t restarts = 50;
  std::size_t max_iterations = 400;
  std::uint64_t seed = 1;
  /// Required depth of the nonlocal partial-transpose eigenvalue.
  double margin = 1e-3;
  PenaltyWeights weights;
  /// Optional starting points for the first restarts, perturbed by
  /// i.i.d. normal noise of standard deviation warm_start_noise.
  std::vector<CopierSpec> warm_starts;
  double warm_start_noise = 1e-3;
  /// The descent targets margin + slack and a local eigenvalue >= slack so
  /// that converged points clear the exact thresholds.
  double slack = 1e-4;
  double initial_step = 0.1;
  /// Worker threads for the restarts; 0 uses the hardware concurrency.
  /// Results do not depend on this value.
  std::size_t threads = 0;

  void validate() const {
    if (!(margin > 0.0)) throw RangeError("SearchConfig: margin must be positive");
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
      throw RangeError("SearchConfig: alpha_sq must lie in [0, 1]");
    }
    if (!(weights.unitarity > 0.0 && weights.local_separability > 0.0 &&
          weights.nonlocal_inseparability > 0.0 && weights.symmetry >= 0.0)) {
      throw RangeError("SearchConfig: penalty weights must be positive");
    }
    if (!(slack >= 0.0) || !(initial_step > 0.0)) {
      throw RangeError("SearchConfig: slack and initial_step must be positive");
    }
  }
};

inline constexpr double kFeasibleScore = 1e-9;

/// Score terms for one candidate.
struct CandidateEvaluation {
  double score = 0.0;
  UnitarityResiduals unitarity;
  double local_min_pt = 0.0;
  double nonlocal_min_pt = 0.0;
  /// ||rho_a - rho_b||_F of the local pair's single-spin marginals.
  double asymmetry = 0.0;
};

namespace detail {

/// Local (aI-bI) and nonlocal (aI-bII) pair operators contracted from the
/// four-party amplitudes, normalized by their trace. Works for candidates
/// that violate the isometry conditions.
inline std::pair<ComplexMatrix, ComplexMatrix> candidate_pairs(const CopierSpec& s,
                                                               double alpha_sq) {
  const double alpha = std::sqrt(alpha_sq);
  const double beta = std::sqrt(std::max(0.0, 1.0 - alpha_sq));
  // amp[i][j][k][l], i = R index of (aI, bI), j = R index of (aII, bII).
  double amp[4][4][4][4];
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l)
          amp[i][j][k][l] = alpha * s.c[i][k] * s.c[j][l] + beta * s.d[i][k] * s.d[j][l];

  ComplexMatrix local(4), nonlocal(4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t i2 = i; i2 < 4; ++i2) {
      double acc = 0.0;
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
          for (std::size_t l = 0; l < 4; ++l) acc += amp[i][j][k][l] * amp[i2][j][k][l];
      local(i, i2) = local(i2, i) = acc;
    }
  }
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = r; c < 4; ++c) {
      const std::size_t a = r / 2, b = r % 2, a2 = c / 2, b2 = c % 2;
      double acc = 0.0;
      for (std::size_t b_i = 0; b_i < 2; ++b_i)
        for (std::size_t a_ii = 0; a_ii < 2; ++a_ii)
          for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t l = 0; l < 4; ++l)
              acc += amp[2 * a + b_i][2 * a_ii + b][k][l] * amp[2 * a2 + b_i][2 * a_ii + b2][k][l];
      nonlocal(r, c) = nonlocal(c, r) = acc;
    }
  }
  for (ComplexMatrix* m : {&local, &nonlocal}) {
    const double tr = m->trace().real();
    if (tr > 0.0) *m *= Complex(1.0 / tr);
  }
  return {std::move(local), std::move(nonlocal)};
}

inline double pt_min(const ComplexMatrix& m) {
  ComplexMatrix pt(4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      pt(2 * (r / 2) + c % 2, 2 * (c / 2) + r % 2) = m(r, c);
  return min_eigenvalue(pt);
}

inline CandidateEvaluation evaluate(std::span<const double, 32> x, const SearchConfig& config,
                                    double local_floor, double margin) {
  const CopierSpec spec = CopierSpec::unflatten(x);
  CandidateEvaluation e;
  e.unitarity = unitarity_residuals(spec);
  const auto [local, nonlocal] = candidate_pairs(spec, config.alpha_sq);
  e.local_min_pt = pt_min(local);
  e.nonlocal_min_pt = pt_min(nonlocal);
  // Marginals of the local pair: rho_a = Tr_b, rho_b = Tr_a.
  const Complex a00 = local(0, 0) + local(1, 1), a11 = local(2, 2) + local(3, 3);
  const Complex a01 = local(0, 2) + local(1, 3);
  const Complex b00 = local(0, 0) + local(2, 2), b11 = local(1, 1) + local(3, 3);
  const Complex b01 = local(0, 1) + local(2, 3);
  const double asym2 =
      std::norm(a00 - b00) + std::norm(a11 - b11) + 2.0 * std::norm(a01 - b01);
  e.asymmetry = std::sqrt(asym2);

  const double local_hinge = std::max(0.0, local_floor - e.local_min_pt);
  const double nonlocal_hinge = std::max(0.0, e.nonlocal_min_pt + margin);
  const auto& w = config.weights;
  e.score = w.unitarity * e.unitarity.squared_sum() +
            w.local_separability * local_hinge * local_hinge +
            w.nonlocal_inseparability * nonlocal_hinge * nonlocal_hinge +
            w.symmetry * asym2;
  return e;
}

}  // namespace detail

/// Penalty terms and score of a candidate under the exact thresholds.
inline CandidateEvaluation evaluate_candidate(std::span<const double, 32> x,
                                              const SearchConfig& config) {
  return detail::evaluate(x, config, 0.0, config.margin);
}

/// Weighted sum of squared isometry residuals, the local-separability hinge
/// max(0, -local_min_pt)^2, the nonlocal hinge max(0, nonlocal_min_pt +
/// margin)^2 and the squared marginal asymmetry. Zero iff feasible.
inline double feasibility_score(std::span<const double, 32> x, const SearchConfig& config) {
  return evaluate_candidate(x, config).score;
}

struct FeasiblePoint {
  CopierSpec spec;
  double score = 0.0;
  double local_min_pt = 0.0;
  double nonlocal_min_pt = 0.0;
  double unitarity_residual = 0.0;
};

inline bool is_feasible(const CandidateEvaluation& e, const SearchConfig& config) {
  return e.score <= kFeasibleScore && e.local_min_pt >= -kPsdClampTolerance &&
         e.nonlocal_min_pt <= -config.margin && e.unitarity.max_abs() <= kFeasibleScore;
}

/// Normalizes the C image, orthogonalizes D against it and normalizes D.
inline Candidate project_to_isometry(Candidate x) {
  auto dot = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 16; ++i) s += x[a + i] * x[b + i];
    return s;
  };
  auto scale = [&](std::size_t a, double f) {
    for (std::size_t i = 0; i < 16; ++i) x[a + i] *= f;
  };
  if (const double n = dot(0, 0); n > 0.0) scale(0, 1.0 / std::sqrt(n));
  const double overlap = dot(0, 16);
  for (std::size_t i = 0; i < 16; ++i) x[16 + i] -= overlap * x[i];
  if (const double n = dot(16, 16); n > 0.0) scale(16, 1.0 / std::sqrt(n));
  return x;
}

/// Coordinate pattern search: each coordinate tries +step and -step; a
/// success doubles that coordinate's step, a failure halves it. Stops when
/// every step is below 1e-10 or after max_iterations sweeps.
template <typename Objective>
Candidate pattern_search(Candidate x, Objective&& objective, std::size_t max_iterations,
                         double initial_step) {
  constexpr double kMinStep = 1e-10;
  constexpr double kMaxStep = 1.0;
  std::array<double, 32> step;
  step.fill(initial_step);
  double best = objective(x);
  for (std::size_t it = 0; it < max_iterations && best > 0.0; ++it) {
    if (*std::max_element(step.begin(), step.end()) < kMinStep) break;
    for (std::size_t j = 0; j < 32; ++j) {
      const double orig = x[j];
      bool improved = false;
      for (double dir : {1.0, -1.0}) {
        x[j] = orig + dir * step[j];
        const double v = objective(x);
        if (v < best) {
          best = v;
          improved = true;
          break;
        }
      }
      if (improved) {
        step[j] = std::min(2.0 * step[j], kMaxStep);
      } else {
        x[j] = orig;
        step[j] *= 0.5;
      }
    }
  }
  return x;
}

namespace detail {

inline double sign_aware_distance(const Candidate& a, const Candidate& b) {
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < 32; ++i) {
    minus += (a[i] - b[i]) * (a[i] - b[i]);
    plus += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return std::sqrt(std::min(plus, minus));
}

inline Candidate restart_start(const SearchConfig& config, std::size_t restart) {
  std::seed_seq seq{std::uint32_t(config.seed), std::uint32_t(config.seed >> 32),
                    std::uint32_t(restart), std::uint32_t(std::uint64_t(restart) >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Candidate x{};
  if (restart < config.warm_starts.size()) {
    x = config.warm_starts[restart].flatten();
    for (auto& v : x) v += config.warm_start_noise * normal(rng);
  } else {
    for (auto& v : x) v = normal(rng);
  }
  for (std::size_t half : {0u, 16u}) {
    double n = 0.0;
    for (std::size_t i = 0; i < 16; ++i) n += x[half + i] * x[half + i];
    if (n > 0.0)
      for (std::size_t i = 0; i < 16; ++i) x[half + i] /= std::sqrt(n);
  }
  return x;
}

}  // namespace detail

/// Runs one restart and returns its polished end point with its
/// evaluation under the exact thresholds.
inline std::pair<Candidate, CandidateEvaluation> run_restart(const SearchConfig& config,
                                                             std::size_t restart) {
  const double local_floor = config.slack;
  const double margin = config.margin + config.slack;
  auto objective = [&](const Candidate& x) {
    return detail::evaluate(x, config, local_floor, margin).score;
  };
  Candidate x = pattern_search(detail::restart_start(config, restart), objective,
                               config.max_iterations, config.initial_step);
  x = project_to_isometry(x);
  return {x, evaluate_candidate(x, config)};
}

/// Feasible points over all restarts, deduplicated up to the global sign
/// flip and sorted by nonlocal_min_pt ascending. Deterministic per seed.
inline std::vector<FeasiblePoint> search_copiers(const SearchConfig& config) {
  config.validate();
  std::vector<std::pair<Candidate, CandidateEvaluation>> ends(config.restarts);
  {
    std::size_t workers = config.threads != 0 ? config.threads
                                              : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(config.restarts, 1));
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < config.restarts; r = next++) {
          ends[r] = run_restart(config, r);
        }
      });
    }
  }
  std::vector<std::pair<Candidate, FeasiblePoint>> found;
  for (const auto& [x, e] : ends) {
    if (!is_feasible(e, config)) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const auto& f) {
      return detail::sign_aware_distance(f.first, x) < 1e-6;
    });
    if (duplicate) continue;
    found.push_back({x, FeasiblePoint{CopierSpec::unflatten(x), e.score, e.local_min_pt,
                                      e.nonlocal_min_pt, e.unitarity.max_abs()}});
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.second.nonlocal_min_pt < b.second.nonlocal_min_pt;
  });
  std::vector<FeasiblePoint> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace entb
