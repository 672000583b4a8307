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

// Subcommands of the `entb` tool. Each returns a process exit code:
//   0  success / broadcasting condition holds / points found
//   1  condition fails / nothing found / self-test failure
//   2  bad input (arguments, spec file, environment)
//   3  output could not be written
// Numbers go through std::to_chars, so output is locale-independent and
// byte-identical across runs.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "entb/broadcast.hpp"
#include "entb/copier.hpp"
#include "entb/copier_text.hpp"
#include "entb/search.hpp"
#include "entb/separability.hpp"

namespace entb::cli {

enum ExitCode : int { kOk = 0, kConditionFails = 1, kBadInput = 2, kIoError = 3 };

/// Verdict band, overridable through ENTB_TOL. Returns nullopt when the
/// variable is set but is not a nonnegative number.
inline std::optional<double> verdict_tolerance(const char* env = std::getenv("ENTB_TOL")) {
  if (env == nullptr || *env == '\0') return kDefaultVerdictTolerance;
  double tol = 0.0;
  const std::string_view s(env);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), tol);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !(tol >= 0.0)) {
    return std::nullopt;
  }
  return tol;
}

/// UQCM when no path is given; otherwise the first record of the file.
inline std::optional<CopierSpec> load_spec_or_default(const std::optional<std::string>& path,
                                                      std::ostream& err) {
  if (!path) return uqcm_spec();
  try {
    return load_copier_spec(*path);
  } catch (const std::exception& e) {
    err << "error: spec file " << *path << ": " << e.what() << '\n';
    return std::nullopt;
  }
}

struct ScanRow {
  double alpha_sq = 0.0;
  SeparabilityReport local;
  SeparabilityReport nonlocal;
};

inline ScanRow scan_row(double alpha_sq, const CopierSpec& spec, double tolerance) {
  const auto outcome = broadcast_numeric(std::sqrt(alpha_sq), spec, tolerance);
  return {alpha_sq, outcome.report(Pair::LocalI), outcome.report(Pair::NonlocalI)};
}

inline constexpr const char* kScanHeader =
    "alpha_sq,min_pt_local,min_pt_nonlocal,w3_local,w4_local,w3_nonlocal,w4_nonlocal,"
    "verdict_local,verdict_nonlocal";

inline std::string format_scan_row(const ScanRow& row) {
  std::string s = format_g17(row.alpha_sq);
  for (double v : {row.local.min_pt_eigenvalue, row.nonlocal.min_pt_eigenvalue, row.local.w[2],
                   row.local.w[3], row.nonlocal.w[2], row.nonlocal.w[3]}) {
    s += ',';
    s += format_g17(v);
  }
  s += ',';
  s += to_string(row.local.verdict);
  s += ',';
  s += to_string(row.nonlocal.verdict);
  return s;
}

/// CSV sweep over a uniform alpha^2 grid on [0, 1].
inline int cmd_scan(std::size_t points, const std::optional<std::string>& spec_path,
                    const std::string& output, double tolerance, std::ostream& err) {
  if (points < 2) {
    err << "error: --points must be at least 2\n";
    return kBadInput;
  }
  const auto spec = load_spec_or_default(spec_path, err);
  if (!spec) return kBadInput;

  std::string csv = kScanHeader;
  csv += '\n';
  for (std::size_t i = 0; i < points; ++i) {
    // Endpoints exact; interior points as i / (N - 1).
    const double x = i + 1 == points ? 1.0 : double(i) / double(points - 1);
    csv += format_scan_row(scan_row(x, *spec, tolerance));
    csv += '\n';
  }
  std::ofstream out(output, std::ios::binary);
  if (!out || !(out << csv) || !out.flush()) {
    err << "error: cannot write " << output << '\n';
    return kIoError;
  }
  return kOk;
}

inline nlohmann::json report_json(const SeparabilityReport& r) {
  return {{"min_pt_eigenvalue", r.min_pt_eigenvalue},
          {"w", {r.w[0], r.w[1], r.w[2], r.w[3]}},
          {"verdict", std::string(to_string(r.verdict))},
          {"determinant_verdict", std::string(to_string(r.determinant_verdict()))}};
}

/// JSON report of all four output pairs at one alpha^2. Exit 0 iff the
/// local pairs are separable and the nonlocal pairs entangled.
inline int cmd_check(double alpha_sq, const std::optional<std::string>& spec_path,
                     double tolerance, std::ostream& out, std::ostream& err) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
    err << "error: --alpha-sq must lie in [0, 1]\n";
    return kBadInput;
  }
  const auto spec = load_spec_or_default(spec_path, err);
  if (!spec) return kBadInput;
  const auto outcome = broadcast_numeric(std::sqrt(alpha_sq), *spec, tolerance);
  nlohmann::json pairs = nlohmann::json::object();
  for (Pair p : kAllPairs) pairs[std::string(to_string(p))] = report_json(outcome.report(p));
  const bool holds = outcome.broadcasting_holds();
  const nlohmann::json doc = {{"alpha_sq", alpha_sq},
                              {"tolerance", tolerance},
                              {"broadcasting", holds},
                              {"pairs", pairs}};
  out << doc.dump(2) << '\n';
  return holds ? kOk : kConditionFails;
}

inline std::string window_json(const SeparabilityWindow& w) {
  std::string kind;
  switch (w.kind) {
    case SeparabilityWindow::Kind::Interval: kind = "interval"; break;
    case SeparabilityWindow::Kind::AlwaysSeparable: kind = "always_separable"; break;
    case SeparabilityWindow::Kind::AlwaysInseparable: kind = "always_inseparable"; break;
  }
  std::string s = "{\"kind\": \"" + kind + "\"";
  if (w.kind == SeparabilityWindow::Kind::Interval) {
    s += ", \"alpha_sq_low\": " + format_fixed(w.alpha_sq_low, 12);
    s += ", \"alpha_sq_high\": " + format_fixed(w.alpha_sq_high, 12);
    s += std::string(", \"inseparable_inside\": ") + (w.inseparable_inside ? "true" : "false");
  }
  return s + "}";
}

/// Both sign-change windows as JSON with 12 decimals.
inline int cmd_windows(const std::optional<std::string>& spec_path, std::ostream& out,
                       std::ostream& err) {
  const auto spec = load_spec_or_default(spec_path, err);
  if (!spec) return kBadInput;
  try {
    const auto nonlocal = separability_window(PairKind::Nonlocal, *spec);
    const auto local = separability_window(PairKind::Local, *spec);
    out << "{\n  \"nonlocal\": " << window_json(nonlocal) << ",\n  \"local\": "
        << window_json(local) << "\n}\n";
  } catch (const NoSignChange& e) {
    err << "error: " << e.what() << '\n';
    return kConditionFails;
  }
  return kOk;
}

/// Feasible points as consecutive copier records separated by "---".
inline std::string format_search_results(const std::vector<FeasiblePoint>& points,
                                         const SearchConfig& config) {
  std::string s = "# alpha_sq = " + format_g17(config.alpha_sq) +
                  ", margin = " + format_g17(config.margin) +
                  ", seed = " + std::to_string(config.seed) +
                  ", restarts = " + std::to_string(config.restarts) + "\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) s += "---\n";
    const auto& p = points[i];
    s += "# point " + std::to_string(i + 1) + ": score = " + format_g17(p.score) +
         ", local_min_pt = " + format_g17(p.local_min_pt) +
         ", nonlocal_min_pt = " + format_g17(p.nonlocal_min_pt) + "\n";
    s += to_text(p.spec);
  }
  return s;
}

inline int cmd_search(const SearchConfig& config, const std::optional<std::string>& output,
                      std::ostream& out, std::ostream& err) {
  std::vector<FeasiblePoint> points;
  try {
    points = search_copiers(config);
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  const std::string text = format_search_results(points, config);
  if (output) {
    std::ofstream file(*output, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
      err << "error: cannot write " << *output << '\n';
      return kIoError;
    }
  } else {
    out << text;
  }
  err << points.size() << " feasible point(s)\n";
  return points.empty() ? kConditionFails : kOk;
}

/// Quick built-in consistency checks; one PASS/FAIL line each.
inline int cmd_selftest(std::ostream& out) {
  struct Check {
    const char* name;
    std::function<bool()> run;
  };
  const CopierSpec uqcm = uqcm_spec();
  const double half = std::sqrt(0.5);
  const std::vector<Check> checks = {
      {"nonlocal window 1/2 +- sqrt(39)/16",
       [&] {
         const auto w = separability_window(PairKind::Nonlocal, uqcm);
         const double d = std::sqrt(39.0) / 16.0;
         return std::abs(w.alpha_sq_low - (0.5 - d)) < 1e-6 &&
                std::abs(w.alpha_sq_high - (0.5 + d)) < 1e-6 && w.inseparable_inside;
       }},
      {"local window 1/2 +- sqrt(48)/16",
       [&] {
         const auto w = separability_window(PairKind::Local, uqcm);
         const double d = std::sqrt(48.0) / 16.0;
         return std::abs(w.alpha_sq_low - (0.5 - d)) < 1e-6 &&
                std::abs(w.alpha_sq_high - (0.5 + d)) < 1e-6 && !w.inseparable_inside;
       }},
      {"spot values at alpha^2 = 1/2",
       [&] {
         const auto o = broadcast_numeric(half, uqcm);
         return std::abs(o.report(Pair::NonlocalI).min_pt_eigenvalue + 1.0 / 12.0) < 1e-12 &&
                std::abs(o.report(Pair::LocalI).min_pt_eigenvalue - 1.0 / 6.0) < 1e-12;
       }},
      {"closed forms match numeric pipeline",
       [&] {
         for (int i = 0; i <= 10; ++i) {
           const double alpha = std::sqrt(i / 10.0);
           const auto o = broadcast_numeric(alpha, uqcm);
           if (max_abs_diff(o.reduction(Pair::LocalI).matrix(),
                            local_output_closed(alpha).matrix()) > 1e-12 ||
               max_abs_diff(o.reduction(Pair::NonlocalI).matrix(),
                            nonlocal_output_closed(alpha).matrix()) > 1e-12) {
             return false;
           }
         }
         return true;
       }},
      {"copier quality conditions",
       [&] {
         const auto q = copier_quality_report(uqcm, 20, 7);
         return q.max_marginal_asymmetry <= 1e-12 && q.original_distance.stddev <= 1e-10 &&
                q.pair_distance.stddev <= 1e-10 && q.no_broadcasting_witness() > 0.1;
       }},
      {"universal copier scores feasible",
       [&] {
         const auto x = uqcm.flatten();
         return feasibility_score(x, SearchConfig{}) <= kFeasibleScore;
       }},
  };
  bool all = true;
  for (const auto& c : checks) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      out << "error in " << c.name << ": " << e.what() << '\n';
    }
    all = all && ok;
    out << (ok ? "PASS  " : "FAIL  ") << c.name << '\n';
  }
  return all ? kOk : kConditionFails;
}

}  // namespace entb::cli
