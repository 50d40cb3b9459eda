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

#ifndef FAIRLINK_DP_HPP
#define FAIRLINK_DP_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fairlink/rng.hpp"

namespace fairlink {

/// Harmonic composition of per-group budgets: eps_overall = (sum 1/eps_g)^-1.
inline double compose_budget(const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw std::invalid_argument("compose_budget: empty budget list");
  double inv_sum = 0.0;
  for (double e : eps_list) {
    if (e <= 0.0) throw std::invalid_argument("compose_budget: budgets must be positive");
    inv_sum += 1.0 / e;
  }
  return 1.0 / inv_sum;
}

/// Per-group privacy budgets eps_g with counting-query sensitivity dB and
/// the derived overall budget.
struct PrivacyBudget {
  std::vector<double> per_group_eps;
  double sensitivity = 1.0;
  double overall_eps = 0.0;

  PrivacyBudget() = default;
  PrivacyBudget(std::vector<double> eps, double delta_b = 1.0)
      : per_group_eps(std::move(eps)), sensitivity(delta_b) {
    if (sensitivity <= 0.0) throw std::invalid_argument("privacy budget: sensitivity must be > 0");
    overall_eps = compose_budget(per_group_eps);
  }

  int group_count() const { return static_cast<int>(per_group_eps.size()); }

  double eps_for(int group) const {
    if (group < 1 || group > group_count()) {
      throw std::invalid_argument("privacy budget: group index out of range");
    }
    return per_group_eps[static_cast<std::size_t>(group - 1)];
  }

  /// The uniform allocation whose harmonic composition equals eps_overall:
  /// eps_g = G * eps_overall for every group.
  static PrivacyBudget uniform(double eps_overall, int groups, double delta_b = 1.0) {
    if (eps_overall <= 0.0) throw std::invalid_argument("privacy budget: eps must be > 0");
    if (groups < 1) throw std::invalid_argument("privacy budget: need at least one group");
    return PrivacyBudget(std::vector<double>(static_cast<std::size_t>(groups),
                                             eps_overall * groups),
                         delta_b);
  }
};

struct LaplaceScale {
  double sigma = 1.0;

  LaplaceScale() = default;
  explicit LaplaceScale(double s) : sigma(s) {
    if (!(sigma > 0.0)) throw std::invalid_argument("laplace scale must be > 0");
  }
  LaplaceScale(double delta_b, double eps) {
    if (!(eps > 0.0) || !(delta_b > 0.0)) {
      throw std::invalid_argument("laplace scale: eps and sensitivity must be > 0");
    }
    sigma = delta_b / eps;
  }
};

/// Draw from the centered Laplace density (1/2s)·exp(-|x|/s).
inline double laplace_sample(const LaplaceScale& scale, rng::Stream& stream) {
  return stream.laplace(scale.sigma);
}

/// Expected dummy records per (bin, group): sigma/2 with sigma = dB/eps_g,
/// i.e. the positive-part mean of the Laplace draw.
inline double expected_dummies(double eps_g, double delta_b) {
  if (eps_g <= 0.0) throw std::invalid_argument("expected_dummies: eps must be > 0");
  if (delta_b <= 0.0) throw std::invalid_argument("expected_dummies: sensitivity must be > 0");
  return delta_b / (2.0 * eps_g);
}

// Cut point for integerizing a Laplace draw x into a dummy count: the count
// is m >= 1 exactly when x lands in [cut + m - 1, cut + m), and 0 below the
// cut. Negative draws therefore add nothing (no records are ever deleted),
// and successive counts m, m+1 keep the exact probability ratio
// exp(eps/dB), so the released bin size obeys the one-sided e^eps bound for
// eps >= dB * ln(2) / (1 - cut)  (~0.92 at cut 0.25).
inline constexpr double kDummyCountCut = 0.25;

/// Integer dummy count from one eps_g-scaled Laplace draw, clamped below at
/// zero. The upper clamp to the bin's group size is applied by the blocking
/// stage, which knows the bin.
inline long dummy_count_draw(double eps_g, double delta_b, rng::Stream& stream) {
  const double x = laplace_sample(LaplaceScale(delta_b, eps_g), stream);
  if (x < kDummyCountCut) return 0;
  return static_cast<long>(std::floor(x - kDummyCountCut)) + 1;
}

/// Closed-form mean of dummy_count_draw (before the blocking-stage clamp):
/// E = (1/2) exp(-cut/sigma) / (1 - exp(-1/sigma)).
inline double dummy_count_mean(double eps_g, double delta_b) {
  if (eps_g <= 0.0) throw std::invalid_argument("dummy_count_mean: eps must be > 0");
  const double sigma = delta_b / eps_g;
  return 0.5 * std::exp(-kDummyCountCut / sigma) / (1.0 - std::exp(-1.0 / sigma));
}

}  // namespace fairlink

#endif  // FAIRLINK_DP_HPP
