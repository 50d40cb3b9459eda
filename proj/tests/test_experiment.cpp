// Copyright 2026 The Fairlink Authors
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

#include "fairlink/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace fairlink {
namespace {

ExperimentConfig tiny_experiment(const std::string& out_dir) {
  ExperimentConfig cfg;
  cfg.synthetic_n = 80;
  cfg.overlap = 0.5;
  cfg.k = 5;
  cfg.n_b = 4;
  cfg.scenarios = {Scenario::kBaseline1, Scenario::kBaseline2};
  cfg.budget_grid = {0.5, 5.0};
  cfg.repetitions = 2;
  cfg.master_seed = 71;
  cfg.base_rate_sample = 100000;
  cfg.out_dir = out_dir;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ConfigDefaults, MatchReportedSetup) {
  const ExperimentConfig cfg;
  EXPECT_EQ(cfg.n_l, 300);
  EXPECT_EQ(cfg.k, 30);
  EXPECT_EQ(cfg.q, 2);
  EXPECT_EQ(cfg.n_b, 30);
  EXPECT_DOUBLE_EQ(cfg.threshold, 0.8);
  ASSERT_EQ(cfg.budget_grid.size(), 3u);
  EXPECT_DOUBLE_EQ(cfg.budget_grid[0], 0.1);
  EXPECT_DOUBLE_EQ(cfg.budget_grid[2], 10.0);
  EXPECT_EQ(cfg.scenarios.size(), 4u);
}

TEST(ConfigParse, ReadsFlatKeyValues) {
  std::stringstream ss;
  ss << "# comment line\n"
     << "n = 123\n"
     << "overlap = 0.4\n"
     << "group_proportions = 0.7,0.3\n"
     << "corruption_rates = 0.1,0.2\n"
     << "eps_grid = 0.5,2\n"
     << "scenarios = baseline2,method_b\n"
     << "classifier = logistic\n"
     << "flip = 0.6\n"
     << "seed = 9\n"
     << "n_b = 4\n";
  const ExperimentConfig cfg = parse_config_text(ss);
  EXPECT_EQ(cfg.synthetic_n, 123);
  EXPECT_DOUBLE_EQ(cfg.overlap, 0.4);
  EXPECT_EQ(cfg.group_proportions, (std::vector<double>{0.7, 0.3}));
  EXPECT_EQ(cfg.corruption.per_group_rates, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(cfg.budget_grid, (std::vector<double>{0.5, 2.0}));
  ASSERT_EQ(cfg.scenarios.size(), 2u);
  EXPECT_EQ(cfg.scenarios[1], Scenario::kMethodB);
  EXPECT_EQ(cfg.classifier, ClassifierKind::kLogistic);
  EXPECT_DOUBLE_EQ(cfg.flip, 0.6);
  EXPECT_EQ(cfg.master_seed, 9u);
  EXPECT_EQ(cfg.n_b, 4);
}

TEST(ConfigParse, UnknownKeyFailsLoudly) {
  std::stringstream ss;
  ss << "n_el = 300\n";
  EXPECT_THROW(parse_config_text(ss), std::invalid_argument);
}

TEST(DeriveScenarioConfig, UniformBudgetsComposeBack) {
  ExperimentConfig cfg = tiny_experiment("unused");
  const PreparedInstance inst = prepare_instance(cfg, 0);
  const ScenarioConfig sc = derive_scenario_config(Scenario::kBaseline2, 0.1, cfg, inst, 3);
  ASSERT_EQ(sc.per_group_eps.size(), 2u);
  EXPECT_DOUBLE_EQ(sc.per_group_eps[0], 0.2);
  EXPECT_NEAR(compose_budget(sc.per_group_eps), 0.1, 1e-12);
}

TEST(DeriveScenarioConfig, MethodBComposesToOverall) {
  ExperimentConfig cfg = tiny_experiment("unused");
  const PreparedInstance inst = prepare_instance(cfg, 0);
  const ScenarioConfig sc = derive_scenario_config(Scenario::kMethodB, 1.0, cfg, inst, 3);
  EXPECT_NEAR(compose_budget(sc.per_group_eps), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(sc.per_group_flip[0], cfg.flip);
}

TEST(RunSingle, Baseline1CostEqualsUnperturbedPairCount) {
  ExperimentConfig cfg = tiny_experiment("unused");
  const PreparedInstance inst = prepare_instance(cfg, 0);
  const ScenarioConfig sc = derive_scenario_config(Scenario::kBaseline1, 1.0, cfg, inst, 5);
  const RunResult run = run_single(inst, sc, cfg, 5);
  EXPECT_EQ(run.report.cost_total,
            static_cast<long>(candidate_pairs(inst.binned_a, inst.binned_b).size()));
}

TEST(RunSingle, DummiesRaiseCostAtSmallEps) {
  ExperimentConfig cfg = tiny_experiment("unused");
  const PreparedInstance inst = prepare_instance(cfg, 0);
  const ScenarioConfig noisy = derive_scenario_config(Scenario::kBaseline2, 0.1, cfg, inst, 5);
  const ScenarioConfig quiet = derive_scenario_config(Scenario::kBaseline2, 50.0, cfg, inst, 5);
  const RunResult rn = run_single(inst, noisy, cfg, 5);
  const RunResult rq = run_single(inst, quiet, cfg, 5);
  EXPECT_GT(rn.report.cost_total, rq.report.cost_total);
}

TEST(RunExperiment, ManifestCoversEveryTupleExactlyOnce) {
  const std::string out =
      (std::filesystem::temp_directory_path() / "fl_exp_manifest").string();
  std::filesystem::remove_all(out);
  ExperimentConfig cfg = tiny_experiment(out);
  ASSERT_TRUE(run_experiment(cfg));
  const csv::Table manifest = csv::read_file(out + "/manifest.csv");
  EXPECT_EQ(manifest.rows.size(), cfg.scenarios.size() * cfg.budget_grid.size() *
                                      static_cast<std::size_t>(cfg.repetitions));
  std::set<std::string> tuples;
  for (const auto& row : manifest.rows) {
    EXPECT_EQ(row[3], "ok");
    EXPECT_TRUE(tuples.insert(row[0] + "|" + row[1] + "|" + row[2]).second);
  }
}

TEST(RunExperiment, RunsFileHasGroupAndOverallRows) {
  const std::string out = (std::filesystem::temp_directory_path() / "fl_exp_rows").string();
  std::filesystem::remove_all(out);
  ExperimentConfig cfg = tiny_experiment(out);
  ASSERT_TRUE(run_experiment(cfg));
  const csv::Table runs = csv::read_file(out + "/runs.csv");
  // (G + 1) rows per run.
  EXPECT_EQ(runs.rows.size(), 3u * cfg.scenarios.size() * cfg.budget_grid.size() *
                                  static_cast<std::size_t>(cfg.repetitions));
  const csv::Table agg = csv::read_file(out + "/aggregates.csv");
  EXPECT_GT(agg.rows.size(), 0u);
}

TEST(RunExperiment, ByteIdenticalUnderSameSeed) {
  const std::string out1 = (std::filesystem::temp_directory_path() / "fl_exp_d1").string();
  const std::string out2 = (std::filesystem::temp_directory_path() / "fl_exp_d2").string();
  std::filesystem::remove_all(out1);
  std::filesystem::remove_all(out2);
  ExperimentConfig cfg = tiny_experiment(out1);
  ASSERT_TRUE(run_experiment(cfg));
  cfg.out_dir = out2;
  ASSERT_TRUE(run_experiment(cfg));
  for (const char* name : {"runs.csv", "aggregates.csv", "manifest.csv"}) {
    EXPECT_EQ(slurp(out1 + "/" + name), slurp(out2 + "/" + name)) << name;
  }
}

// Small-instance check of the closed-form FPR against 200 end-to-end runs.
TEST(PredictedFpr, SmallInstanceWithinFiveHundredths) {
  ExperimentConfig cfg;
  cfg.synthetic_n = 50;
  cfg.overlap = 0.5;
  cfg.k = 5;
  cfg.n_b = 4;
  cfg.threshold = 0.8;
  cfg.flip = 0.5;
  cfg.master_seed = 88;
  cfg.base_rate_sample = 1u << 30;
  const double eps = 1.0;
  const PreparedInstance inst = prepare_instance(cfg, 0);
  const ScenarioConfig sc = derive_scenario_config(Scenario::kBaseline2, eps, cfg, inst, 0);
  for (int g = 1; g <= 2; ++g) {
    double empirical = 0.0;
    for (int s = 0; s < 200; ++s) {
      const std::uint64_t run_seed =
          rng::derive(7, "small-fpr", {static_cast<std::uint64_t>(s)}).next_u64();
      empirical +=
          run_single(inst, sc, cfg, run_seed).report.per_group[g - 1].fpr();
    }
    empirical /= 200.0;
    const double predicted = predicted_fpr(g, sc.per_group_eps[g - 1], sc.per_group_flip[g - 1],
                                           inst.base, inst.params);
    EXPECT_NEAR(predicted, empirical, 0.05) << "group " << g;
  }
}

TEST(OracleFpCurve, EndpointsAndAgreement) {
  AnalyticsParams params;
  params.n_l = 300;
  params.threshold = 0.8;
  params.fill_p = 0.5;
  const auto rows = oracle_fp_curve(params, {0.0, 0.1, 0.5}, 2000, 12);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[0][1], 1.0);
  EXPECT_DOUBLE_EQ(rows[0][2], 1.0);
  EXPECT_LT(rows[2][1], 1e-6);
  EXPECT_LT(rows[2][2], 1e-3);
  for (const auto& r : rows) EXPECT_NEAR(r[1], r[2], 0.05);
}

TEST(OracleFprCurve, EmitsPerGroupRows) {
  ExperimentConfig cfg = tiny_experiment("unused");
  const auto rows = oracle_fpr_curve(cfg, {0.5, 5.0}, 3);
  ASSERT_EQ(rows.size(), 4u);  // 2 budgets x 2 groups
  for (const auto& r : rows) {
    EXPECT_GE(r.predicted, 0.0);
    EXPECT_LE(r.predicted, 1.0);
    EXPECT_GE(r.simulated, 0.0);
    EXPECT_LE(r.simulated, 1.0);
  }
}

}  // namespace
}  // namespace fairlink
