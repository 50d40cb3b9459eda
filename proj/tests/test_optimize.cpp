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

#include "fairlink/optimize.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

namespace fairlink {
namespace {

AnalyticsParams reference_params(double n_bins = 16.0) {
  AnalyticsParams p;
  p.n_l = 300;
  p.threshold = 0.8;
  p.fill_p = 0.5;
  p.n_bins = n_bins;
  return p;
}

BaseRates symmetric_base() {
  BaseRates base;
  base.per_group.resize(2);
  base.per_group[0] = {400.0, 8.0, 3000.0, 40.0, 3000.0, 250.0, 250.0};
  base.per_group[1] = base.per_group[0];
  base.n_bins = 16.0;
  return base;
}

BaseRates biased_base() {
  BaseRates base;
  base.per_group.resize(2);
  // Group 2 carries both a higher base FPR and a higher FNR.
  base.per_group[0] = {420.0, 6.0, 3400.0, 30.0, 3400.0, 280.0, 280.0};
  base.per_group[1] = {160.0, 14.0, 1200.0, 45.0, 1200.0, 120.0, 120.0};
  base.n_bins = 16.0;
  return base;
}

TEST(MethodA, SymmetricGroupsGetEqualFlipsAtZeroLoss) {
  const auto result = method_a_search({1.0, 1.0}, symmetric_base(), reference_params(), 0.05);
  EXPECT_DOUBLE_EQ(result.achieved_loss, 0.0);
  EXPECT_DOUBLE_EQ(result.per_group_values[0], result.per_group_values[1]);
}

TEST(MethodA, TieBreakSelectsLargestFlipsOnSaturatedPlateau) {
  // With symmetric base rates the dummy-FP term vanishes identically for
  // any flips past the extinction point, so the plateau extends to 1.0.
  const auto result = method_a_search({1.0, 1.0}, symmetric_base(), reference_params(), 0.01);
  EXPECT_DOUBLE_EQ(result.per_group_values[0], 1.0);
  EXPECT_DOUBLE_EQ(result.per_group_values[1], 1.0);
}

TEST(MethodA, MatchesExhaustiveGridOracle) {
  const BaseRates base = biased_base();
  const AnalyticsParams params = reference_params();
  const std::vector<double> eps = {0.5, 0.5};
  const double step = 0.01;
  const auto result = method_a_search(eps, base, params, step);

  // Independent enumeration over the same grid with the same tie-break.
  double best = std::numeric_limits<double>::infinity();
  double best_f1 = 0.0, best_f2 = 0.0;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double f1 = std::min(i * step, 1.0);
      const double f2 = std::min(j * step, 1.0);
      const double loss = model_fairness_loss({f1, f2}, eps, base, params);
      if (loss <= best) {
        best = loss;
        best_f1 = f1;
        best_f2 = f2;
      }
    }
  }
  EXPECT_DOUBLE_EQ(result.achieved_loss, best);
  EXPECT_DOUBLE_EQ(result.per_group_values[0], best_f1);
  EXPECT_DOUBLE_EQ(result.per_group_values[1], best_f2);
}

TEST(MethodA, NeverWorseThanUniformBaseline) {
  const BaseRates base = biased_base();
  const AnalyticsParams params = reference_params();
  const std::vector<double> eps = {0.2, 0.2};
  const auto result = method_a_search(eps, base, params, 0.01);
  const double baseline = model_fairness_loss({0.5, 0.5}, eps, base, params);
  EXPECT_LE(result.achieved_loss, baseline + 1e-15);
}

TEST(MethodA, InputValidation) {
  EXPECT_THROW(method_a_search({1.0, 2.0}, symmetric_base(), reference_params(), 0.01),
               std::invalid_argument);
  EXPECT_THROW(method_a_search({1.0, 1.0}, symmetric_base(), reference_params(), 0.2),
               std::invalid_argument);
}

TEST(MethodB, SymmetricGroupsStayUniform) {
  const double eps_overall = 0.4;
  const auto result =
      method_b_allocate(eps_overall, {0.5, 0.5}, symmetric_base(), reference_params(), 1e-6);
  EXPECT_DOUBLE_EQ(result.per_group_values[0], eps_overall * 2);
  EXPECT_DOUBLE_EQ(result.per_group_values[1], eps_overall * 2);
  EXPECT_NEAR(compose_budget(result.per_group_values), eps_overall, 1e-9);
}

TEST(MethodB, ConstraintHeldToTolerance) {
  for (double eps_overall : {0.1, 1.0, 10.0}) {
    const auto result =
        method_b_allocate(eps_overall, {0.5, 0.5}, biased_base(), reference_params(), 1e-6);
    EXPECT_NEAR(compose_budget(result.per_group_values), eps_overall, 1e-9);
    for (double e : result.per_group_values) EXPECT_GT(e, 0.0);
  }
}

TEST(MethodB, BeatsOrMatchesFineGridOracle) {
  const BaseRates base = biased_base();
  const AnalyticsParams params = reference_params();
  const double eps_overall = 0.5;
  const std::vector<double> flips = {0.5, 0.5};
  const auto result = method_b_allocate(eps_overall, flips, base, params, 1e-6);

  // 1e4-point log-grid oracle over the same 1-D manifold.
  double oracle = std::numeric_limits<double>::infinity();
  const double lo = eps_overall * 1.001, hi = eps_overall * 1000.0;
  for (int i = 0; i < 10000; ++i) {
    const double e1 = lo * std::pow(hi / lo, i / 9999.0);
    const double e2 = 1.0 / (1.0 / eps_overall - 1.0 / e1);
    if (e2 <= 0.0) continue;
    oracle = std::min(oracle, model_fairness_loss(flips, {e1, e2}, base, params));
  }
  EXPECT_LE(result.achieved_loss, oracle + 1e-6);
}

TEST(MethodB, NeverWorseThanUniformAndDeterministic) {
  const BaseRates base = biased_base();
  const AnalyticsParams params = reference_params();
  const double eps_overall = 1.0;
  const std::vector<double> flips = {0.5, 0.5};
  const auto r1 = method_b_allocate(eps_overall, flips, base, params, 1e-6);
  const auto r2 = method_b_allocate(eps_overall, flips, base, params, 1e-6);
  EXPECT_EQ(r1.per_group_values, r2.per_group_values);
  const double uniform =
      model_fairness_loss(flips, {eps_overall * 2, eps_overall * 2}, base, params);
  EXPECT_LE(r1.achieved_loss, uniform + 1e-15);
}

TEST(MethodB, ThreeGroupSymmetricCase) {
  BaseRates base;
  base.per_group.resize(3);
  base.per_group[0] = {300.0, 5.0, 2000.0, 30.0, 2000.0, 150.0, 150.0};
  base.per_group[1] = base.per_group[0];
  base.per_group[2] = base.per_group[0];
  base.n_bins = 16.0;
  const double eps_overall = 0.3;
  const auto result =
      method_b_allocate(eps_overall, {0.5, 0.5, 0.5}, base, reference_params(), 1e-6);
  EXPECT_NEAR(compose_budget(result.per_group_values), eps_overall, 1e-9);
  for (double e : result.per_group_values) EXPECT_DOUBLE_EQ(e, eps_overall * 3);
}

}  // namespace
}  // namespace fairlink
