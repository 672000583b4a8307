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

#include <cmath>

#include "gtest/gtest.h"

#include "entb/broadcast.hpp"
#include "entb/search.hpp"
#include "test_support.hpp"

using namespace entb;
using entb::fixtures::Rng;

TEST(feasibility_score, uqcm_is_feasible) {
  const SearchConfig config;
  const auto x = uqcm_spec().flatten();
  const auto e = evaluate_candidate(x, config);
  EXPECT_LE(e.score, kFeasibleScore);
  EXPECT_NEAR(e.nonlocal_min_pt, -1.0 / 12.0, 1e-12);
  EXPECT_NEAR(e.local_min_pt, 1.0 / 6.0, 1e-12);
  EXPECT_LE(e.asymmetry, 1e-15);
  EXPECT_TRUE(is_feasible(e, config));
}

TEST(feasibility_score, zero_candidate_pays_unitarity) {
  const SearchConfig config;
  const Candidate zero{};
  EXPECT_GE(feasibility_score(zero, config), 2.0 * config.weights.unitarity);
}

TEST(feasibility_score, scaled_uqcm_pays_norm_penalty) {
  SearchConfig config;
  auto x = uqcm_spec().flatten();
  for (std::size_t i = 0; i < 16; ++i) x[i] *= 1.1;
  // ||C||^2 = 1.21: residual 0.21.
  EXPECT_NEAR(feasibility_score(x, config), 0.21 * 0.21, 1e-12);
  EXPECT_FALSE(is_feasible(evaluate_candidate(x, config), config));
}

TEST(feasibility_score, margin_controls_nonlocal_hinge) {
  SearchConfig config;
  config.margin = 0.1;  // deeper than -1/12
  const double hinge = -1.0 / 12.0 + 0.1;
  EXPECT_NEAR(feasibility_score(uqcm_spec().flatten(), config), hinge * hinge, 1e-12);
}

TEST(feasibility_score, invariant_under_global_sign) {
  Rng rng(1);
  const SearchConfig config;
  for (int trial = 0; trial < 20; ++trial) {
    Candidate x;
    std::normal_distribution<double> normal;
    for (auto& v : x) v = normal(rng);
    Candidate neg = x;
    for (auto& v : neg) v = -v;
    EXPECT_NEAR(feasibility_score(x, config), feasibility_score(neg, config),
                1e-12 * std::max(1.0, feasibility_score(x, config)));
  }
}

TEST(feasibility_score, continuous) {
  Rng rng(2);
  const SearchConfig config;
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const Candidate x = project_to_isometry([&] {
      Candidate c;
      for (auto& v : c) v = normal(rng);
      return c;
    }());
    for (std::size_t j = 0; j < 32; ++j) {
      Candidate y = x;
      y[j] += 1e-8;
      EXPECT_LE(std::abs(feasibility_score(y, config) - feasibility_score(x, config)),
                1e-4 * config.weights.total());
    }
  }
}

TEST(feasibility_score, matches_numeric_pipeline_for_valid_specs) {
  Rng rng(3);
  SearchConfig config;
  config.alpha_sq = 0.3;
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = fixtures::random_valid_spec(rng);
    const auto e = evaluate_candidate(spec.flatten(), config);
    const auto o = broadcast_numeric(std::sqrt(config.alpha_sq), spec);
    EXPECT_NEAR(e.local_min_pt, o.report(Pair::LocalI).min_pt_eigenvalue, 1e-12);
    EXPECT_NEAR(e.nonlocal_min_pt, o.report(Pair::NonlocalI).min_pt_eigenvalue, 1e-12);
  }
}

TEST(project_to_isometry, satisfies_conditions) {
  Rng rng(4);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    Candidate x;
    for (auto& v : x) v = normal(rng);
    const auto r = unitarity_residuals(CopierSpec::unflatten(project_to_isometry(x)));
    EXPECT_LE(r.max_abs(), 1e-14);
  }
}

TEST(pattern_search, minimizes_quadratic) {
  Candidate target;
  for (std::size_t i = 0; i < 32; ++i) target[i] = 0.01 * double(i) - 0.1;
  auto f = [&](const Candidate& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < 32; ++i) s += (x[i] - target[i]) * (x[i] - target[i]);
    return s;
  };
  const Candidate x = pattern_search(Candidate{}, f, 1000, 0.1);
  EXPECT_LE(f(x), 1e-16);
}

TEST(SearchConfig, validation) {
  SearchConfig c;
  c.margin = 0.0;
  EXPECT_THROW(c.validate(), RangeError);
  c = SearchConfig{};
  c.alpha_sq = 1.5;
  EXPECT_THROW(c.validate(), RangeError);
  c = SearchConfig{};
  c.weights.unitarity = 0.0;
  EXPECT_THROW(c.validate(), RangeError);
  c = SearchConfig{};
  c.weights.symmetry = 0.0;
  EXPECT_NO_THROW(c.validate());
}

TEST(search_copiers, warm_start_recovers_uqcm_neighbourhood) {
  SearchConfig config;
  config.restarts = 1;
  config.warm_starts = {uqcm_spec()};
  const auto found = search_copiers(config);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_LE(found[0].nonlocal_min_pt, -0.05);
  EXPECT_GE(found[0].local_min_pt, 0.0);
  EXPECT_LE(found[0].unitarity_residual, 1e-9);
}

TEST(search_copiers, unreachable_margin_finds_nothing) {
  // The nonlocal pair's partial transpose cannot go below -1/2.
  SearchConfig config;
  config.restarts = 2;
  config.max_iterations = 50;
  config.margin = 1.0;
  EXPECT_TRUE(search_copiers(config).empty());
}

TEST(search_copiers, results_are_feasible_and_deterministic) {
  SearchConfig config;
  config.restarts = 8;
  config.threads = 1;
  const auto serial = search_copiers(config);
  config.threads = 4;
  const auto parallel = search_copiers(config);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].spec, parallel[i].spec);
    EXPECT_EQ(serial[i].score, parallel[i].score);
  }
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const auto& p = serial[i];
    if (i > 0) EXPECT_LE(serial[i - 1].nonlocal_min_pt, p.nonlocal_min_pt);
    EXPECT_LE(p.score, kFeasibleScore);
    // Re-check through the full state pipeline.
    const auto o = broadcast_numeric(std::sqrt(config.alpha_sq), p.spec);
    EXPECT_GE(o.report(Pair::LocalI).min_pt_eigenvalue, -1e-10);
    EXPECT_LE(o.report(Pair::NonlocalI).min_pt_eigenvalue, -config.margin + 1e-10);
  }
}

TEST(search_copiers, distinct_seeds_give_distinct_starts) {
  SearchConfig a, b;
  b.seed = 2;
  EXPECT_NE(detail::restart_start(a, 0), detail::restart_start(b, 0));
  EXPECT_NE(detail::restart_start(a, 0), detail::restart_start(a, 1));
  EXPECT_EQ(detail::restart_start(a, 3), detail::restart_start(a, 3));
}
