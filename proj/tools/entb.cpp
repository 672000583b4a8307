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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "entb/cli.hpp"

namespace {

std::optional<std::string> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace entb;

  CLI::App app{"Local broadcasting of two-qubit entanglement with quantum copiers"};
  app.require_subcommand(1);

  std::size_t points = 101;
  std::string spec_file;
  std::string out_file;
  double alpha_sq = 0.5;

  auto* scan = app.add_subcommand("scan", "CSV sweep of both pair verdicts over alpha^2");
  scan->add_option("--points", points, "Uniform grid points on [0, 1]")->capture_default_str();
  scan->add_option("--spec", spec_file, "Copier spec file (default: universal copier)");
  scan->add_option("--out", out_file, "Output CSV path")->required();

  auto* check = app.add_subcommand("check", "JSON report of all four pairs at one alpha^2");
  check->add_option("--alpha-sq", alpha_sq, "Input weight alpha^2")->required();
  check->add_option("--spec", spec_file, "Copier spec file");

  auto* windows = app.add_subcommand("windows", "Sign-change windows of both pairs");
  windows->add_option("--spec", spec_file, "Copier spec file");

  SearchConfig config;
  auto* search = app.add_subcommand("search", "Search copier amplitudes that broadcast");
  search->add_option("--restarts", config.restarts)->capture_default_str();
  search->add_option("--seed", config.seed)->capture_default_str();
  search->add_option("--margin", config.margin)->capture_default_str();
  search->add_option("--alpha-sq", config.alpha_sq)->capture_default_str();
  search->add_option("--max-iterations", config.max_iterations)->capture_default_str();
  search->add_option("--symmetry-weight", config.weights.symmetry,
                     "Weight of the original/copy asymmetry penalty (0 disables)")
      ->capture_default_str();
  search->add_option("--threads", config.threads, "0 = hardware concurrency");
  search->add_option("--out", out_file, "Write found specs here instead of stdout");

  auto* selftest = app.add_subcommand("selftest", "Run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kBadInput;
  }

  const auto tolerance = cli::verdict_tolerance();
  if (!tolerance) {
    std::cerr << "error: ENTB_TOL must be a nonnegative number\n";
    return cli::kBadInput;
  }

  try {
    if (*scan) return cli::cmd_scan(points, optional_path(spec_file), out_file, *tolerance, std::cerr);
    if (*check) {
      return cli::cmd_check(alpha_sq, optional_path(spec_file), *tolerance, std::cout, std::cerr);
    }
    if (*windows) return cli::cmd_windows(optional_path(spec_file), std::cout, std::cerr);
    if (*search) return cli::cmd_search(config, optional_path(out_file), std::cout, std::cerr);
    if (*selftest) return cli::cmd_selftest(std::cout);
  } catch (const entb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kBadInput;
  }
  return cli::kBadInput;
}
