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

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

#include "entb/cli.hpp"

using namespace entb;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("entb_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

using cli_scan = TempDir;

TEST_F(cli_scan, three_point_grid) {
  const auto path = (dir_ / "scan.csv").string();
  std::ostringstream err;
  ASSERT_EQ(cli::cmd_scan(3, std::nullopt, path, kDefaultVerdictTolerance, err), cli::kOk);
  const auto lines = split(slurp(path), '\n');
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], cli::kScanHeader);
  const auto mid = split(lines[2], ',');
  ASSERT_EQ(mid.size(), 9u);
  EXPECT_EQ(mid[0], "0.5");
  EXPECT_NEAR(to_double(mid[1]), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(to_double(mid[2]), -1.0 / 12.0, 1e-12);
  EXPECT_EQ(mid[7], "Separable");
  EXPECT_EQ(mid[8], "Inseparable");
  EXPECT_EQ(split(lines[1], ',')[0], "0");
  EXPECT_EQ(split(lines[1], ',')[8], "Separable");
  EXPECT_EQ(split(lines[3], ',')[0], "1");
}

TEST_F(cli_scan, byte_identical_reruns) {
  const auto a = (dir_ / "a.csv").string(), b = (dir_ / "b.csv").string();
  std::ostringstream err;
  ASSERT_EQ(cli::cmd_scan(11, std::nullopt, a, kDefaultVerdictTolerance, err), cli::kOk);
  ASSERT_EQ(cli::cmd_scan(11, std::nullopt, b, kDefaultVerdictTolerance, err), cli::kOk);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(cli_scan, spec_file_round_trip) {
  const auto spec_path = (dir_ / "uqcm.txt").string();
  std::ofstream(spec_path) << to_text(uqcm_spec());
  const auto a = (dir_ / "a.csv").string(), b = (dir_ / "b.csv").string();
  std::ostringstream err;
  ASSERT_EQ(cli::cmd_scan(5, std::nullopt, a, kDefaultVerdictTolerance, err), cli::kOk);
  ASSERT_EQ(cli::cmd_scan(5, spec_path, b, kDefaultVerdictTolerance, err), cli::kOk);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(cli_scan, error_codes) {
  std::ostringstream err;
  EXPECT_EQ(cli::cmd_scan(1, std::nullopt, (dir_ / "x.csv").string(), 1e-10, err),
            cli::kBadInput);
  const auto bad_spec = (dir_ / "bad.txt").string();
  std::ofstream(bad_spec) << "C[1][1] = 2\n";
  EXPECT_EQ(cli::cmd_scan(3, bad_spec, (dir_ / "x.csv").string(), 1e-10, err), cli::kBadInput);
  EXPECT_EQ(cli::cmd_scan(3, (dir_ / "missing.txt").string(), (dir_ / "x.csv").string(), 1e-10,
                          err),
            cli::kBadInput);
  EXPECT_EQ(cli::cmd_scan(3, std::nullopt, (dir_ / "no" / "such" / "x.csv").string(), 1e-10, err),
            cli::kIoError);
}

TEST(cli_check, exit_codes_and_json) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_check(0.5, std::nullopt, 1e-10, out, err), cli::kOk);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_TRUE(doc["broadcasting"].get<bool>());
  EXPECT_NEAR(doc["pairs"]["aI-bII"]["min_pt_eigenvalue"].get<double>(), -1.0 / 12.0, 1e-12);
  EXPECT_EQ(doc["pairs"]["aI-bI"]["verdict"], "Separable");
  EXPECT_EQ(doc["pairs"]["aII-bI"]["verdict"], "Inseparable");
  EXPECT_EQ(doc["pairs"]["aI-bII"]["w"].size(), 4u);

  std::ostringstream out2;
  EXPECT_EQ(cli::cmd_check(0.0, std::nullopt, 1e-10, out2, err), cli::kConditionFails);
  EXPECT_EQ(cli::cmd_check(0.05, std::nullopt, 1e-10, out2, err), cli::kConditionFails);
  EXPECT_EQ(cli::cmd_check(2.0, std::nullopt, 1e-10, out2, err), cli::kBadInput);
}

TEST(cli_windows, json_output) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_windows(std::nullopt, out, err), cli::kOk);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["nonlocal"]["kind"], "interval");
  EXPECT_NEAR(doc["nonlocal"]["alpha_sq_low"].get<double>(), 0.5 - std::sqrt(39.0) / 16, 1e-6);
  EXPECT_NEAR(doc["local"]["alpha_sq_high"].get<double>(), 0.5 + std::sqrt(48.0) / 16, 1e-6);
  EXPECT_TRUE(doc["nonlocal"]["inseparable_inside"].get<bool>());
  EXPECT_FALSE(doc["local"]["inseparable_inside"].get<bool>());
  EXPECT_NE(out.str().find("0.109687625"), std::string::npos);
}

using cli_search = TempDir;

TEST_F(cli_search, writes_parseable_records) {
  SearchConfig config;
  config.restarts = 1;
  config.warm_starts = {uqcm_spec()};
  const auto path = (dir_ / "found.txt").string();
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_search(config, path, out, err), cli::kOk);
  const auto specs = parse_copier_specs(slurp(path));
  ASSERT_EQ(specs.size(), 1u);
  EXPECT_LE(unitarity_residuals(specs[0]).max_abs(), 1e-9);
}

TEST(cli_search_codes, nothing_found_and_bad_config) {
  SearchConfig config;
  config.restarts = 1;
  config.max_iterations = 20;
  config.margin = 1.0;
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_search(config, std::nullopt, out, err), cli::kConditionFails);
  config.margin = -1.0;
  EXPECT_EQ(cli::cmd_search(config, std::nullopt, out, err), cli::kBadInput);
}

TEST(cli_tolerance, environment_parsing) {
  EXPECT_EQ(cli::verdict_tolerance(nullptr), kDefaultVerdictTolerance);
  EXPECT_EQ(cli::verdict_tolerance(""), kDefaultVerdictTolerance);
  EXPECT_EQ(cli::verdict_tolerance("1e-6"), 1e-6);
  EXPECT_EQ(cli::verdict_tolerance("0"), 0.0);
  EXPECT_FALSE(cli::verdict_tolerance("abc").has_value());
  EXPECT_FALSE(cli::verdict_tolerance("-1").has_value());
  EXPECT_FALSE(cli::verdict_tolerance("1e-6x").has_value());
}

TEST(cli_tolerance, wide_band_turns_verdicts_to_boundary) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_check(0.5, std::nullopt, 1.0, out, err), cli::kConditionFails);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["pairs"]["aI-bII"]["verdict"], "Boundary");
}

TEST(cli_selftest, passes) {
  std::ostringstream out;
  EXPECT_EQ(cli::cmd_selftest(out), cli::kOk) << out.str();
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
}
