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

#ifndef FAIRLINK_OPTIMIZE_HPP
#define FAIRLINK_OPTIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairlink/analytics.hpp"
#include "fairlink/dp.hpp"

namespace fairlink {

struct OptimizationResult {
  std::vector<double> per_group_values;  // flip_g* for method A, eps_g* for method B
  double achieved_loss = 0.0;
  long evaluations = 0;
  std::string notes;
};

/// Method A: fairness-constrained flip search. Budgets stay fixed (and
/// uniform), so the DP guarantee is untouched; the per-group flip vector is
/// chosen by exhaustive grid search over [0,1]^G minimizing the model
/// fairness loss. Ties prefer the lexicographically largest flips (more
/// obfuscation at equal fairness).
inline OptimizationResult method_a_search(const std::vector<double>& fixed_eps,
                                          const BaseRates& base, const AnalyticsParams& params,
                                          double grid_step = 0.01) {
  const int g_count = base.group_count();
  if (g_count < 2) throw std::invalid_argument("method A: need at least two groups");
  if (static_cast<int>(fixed_eps.size()) != g_count) {
    throw std::invalid_argument("method A: eps group count mismatch");
  }
  for (double e : fixed_eps) {
    if (e != fixed_eps[0]) throw std::invalid_argument("method A: eps must be uniform");
    if (e <= 0.0) throw std::invalid_argument("method A: eps must be > 0");
  }
  if (!(grid_step > 0.0) || grid_step > 0.1) {
    throw std::invalid_argument("method A: grid step outside (0, 0.1]");
  }

  const int steps = static_cast<int>(std::lround(1.0 / grid_step));
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    grid[static_cast<std::size_t>(i)] = std::min(i * grid_step, 1.0);
  }

  OptimizationResult result;
  result.per_group_values.assign(static_cast<std::size_t>(g_count), 0.0);
  std::vector<int> idx(static_cast<std::size_t>(g_count), 0);
  std::vector<double> flips(static_cast<std::size_t>(g_count), 0.0);
  double best = std::numeric_limits<double>::infinity();

  // Odometer over the grid, last group fastest; enumeration order is
  // lexicographic ascending, so accepting on <= keeps the largest tie.
  while (true) {
    for (int g = 0; g < g_count; ++g) {
      flips[static_cast<std::size_t>(g)] = grid[static_cast<std::size_t>(idx[static_cast<std::size_t>(g)])];
    }
    const double loss = model_fairness_loss(flips, fixed_eps, base, params);
    ++result.evaluations;
    if (loss <= best) {
      best = loss;
      result.per_group_values = flips;
    }
    int g = g_count - 1;
    while (g >= 0 && idx[static_cast<std::size_t>(g)] == steps) {
      idx[static_cast<std::size_t>(g)] = 0;
      --g;
    }
    if (g < 0) break;
    ++idx[static_cast<std::size_t>(g)];
  }
  result.achieved_loss = best;
  return result;
}

namespace detail {

/// Completes a per-group inverse-budget vector into budgets that compose to
/// overall_eps exactly: the slots listed in free_groups already hold 1/eps
/// values; remaining_inv is assigned to slot `balance`.
inline double loss_on_manifold(const std::vector<double>& eps, const std::vector<double>& flips,
                               const BaseRates& base, const AnalyticsParams& params) {
  return model_fairness_loss(flips, eps, base, params);
}

}  // namespace detail

/// Method B: cost-constrained budget allocation. Flips stay fixed (and
/// uniform); per-group budgets minimize the model fairness loss subject to
/// (sum_g 1/eps_g)^-1 = overall_eps. For G = 2 the manifold is the curve
/// eps_2 = (1/overall - 1/eps_1)^-1 with eps_1 in (overall, inf); a coarse
/// log grid brackets the minimum and golden-section refines it. For G > 2,
/// cyclic pairwise descent applies the same 1-D step to each group pair.
/// Ties prefer the uniform allocation.
inline OptimizationResult method_b_allocate(double overall_eps,
                                            const std::vector<double>& fixed_flip,
                                            const BaseRates& base, const AnalyticsParams& params,
                                            double tol = 1e-6) {
  const int g_count = base.group_count();
  if (g_count < 2) throw std::invalid_argument("method B: need at least two groups");
  if (!(overall_eps > 0.0)) throw std::invalid_argument("method B: eps must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("method B: tol must be > 0");
  if (static_cast<int>(fixed_flip.size()) != g_count) {
    throw std::invalid_argument("method B: flip group count mismatch");
  }
  for (double f : fixed_flip) {
    if (f != fixed_flip[0]) throw std::invalid_argument("method B: flip must be uniform");
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("method B: flip outside [0,1]");
  }

  OptimizationResult result;
  long evaluations = 0;

  // eps vector from one free inverse coordinate: slots i and j share the
  // inverse budget pair_inv; x is 1/eps_i, pair_inv - x is 1/eps_j.
  std::vector<double> eps(static_cast<std::size_t>(g_count),
                          overall_eps * static_cast<double>(g_count));
  auto loss_of = [&](const std::vector<double>& e) {
    ++evaluations;
    return detail::loss_on_manifold(e, fixed_flip, base, params);
  };

  const double uniform_loss = loss_of(eps);
  std::vector<double> best_eps = eps;
  double best_loss = uniform_loss;

  // One pass of 1-D minimization on the (i, j) inverse-budget pair.
  auto optimize_pair = [&](std::vector<double>& cur, int i, int j) {
    const double pair_inv = 1.0 / cur[static_cast<std::size_t>(i)] +
                            1.0 / cur[static_cast<std::size_t>(j)];
    // 1/eps_i ranges over (0, pair_inv); parameterize by eps_i in
    // (1/pair_inv, ~1000/pair_inv) on a log grid.
    const double lo = (1.0 / pair_inv) * 1.001;
    const double hi = (1.0 / pair_inv) * 1000.0;
    const int coarse_n = 200;
    auto eval_at = [&](double eps_i) {
      std::vector<double> e = cur;
      e[static_cast<std::size_t>(i)] = eps_i;
      e[static_cast<std::size_t>(j)] = 1.0 / (pair_inv - 1.0 / eps_i);
      return std::make_pair(loss_of(e), e);
    };
    double coarse_best = std::numeric_limits<double>::infinity();
    int coarse_idx = 0;
    std::vector<double> xs(coarse_n);
    for (int t = 0; t < coarse_n; ++t) {
      xs[static_cast<std::size_t>(t)] =
          lo * std::pow(hi / lo, static_cast<double>(t) / (coarse_n - 1));
      const double l = eval_at(xs[static_cast<std::size_t>(t)]).first;
      if (l < coarse_best) {
        coarse_best = l;
        coarse_idx = t;
      }
    }
    // Golden-section refinement in log space on the bracketing interval.
    double a = std::log(xs[static_cast<std::size_t>(std::max(0, coarse_idx - 1))]);
    double b = std::log(xs[static_cast<std::size_t>(std::min(coarse_n - 1, coarse_idx + 1))]);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    auto fc = eval_at(std::exp(c));
    auto fd = eval_at(std::exp(d));
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
      if (fc.first <= fd.first) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = eval_at(std::exp(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = eval_at(std::exp(d));
      }
    }
    if (std::fabs(fc.first - fd.first) > tol) {
      throw std::runtime_error("method B: refinement did not converge to tol");
    }
    auto chosen = fc.first <= fd.first ? fc : fd;
    if (coarse_best < chosen.first) chosen = eval_at(xs[static_cast<std::size_t>(coarse_idx)]);
    if (chosen.first < best_loss) {
      best_loss = chosen.first;
      best_eps = chosen.second;
    }
    cur = chosen.second;
  };

  std::vector<double> cur = eps;
  const int sweeps = g_count == 2 ? 1 : 4;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    const double before = best_loss;
    for (int i = 0; i + 1 < g_count; ++i) optimize_pair(cur, i, i + 1);
    if (sweep > 0 && before - best_loss <= tol) break;
  }

  // Uniform allocation wins ties: privacy accounting then matches the
  // uniform scenario exactly.
  if (uniform_loss <= best_loss) {
    best_loss = uniform_loss;
    best_eps = eps;
    result.notes = "uniform";
  }

  if (std::fabs(compose_budget(best_eps) - overall_eps) > 1e-9) {
    throw std::runtime_error("method B: constraint projection failed");
  }
  result.per_group_values = best_eps;
  result.achieved_loss = best_loss;
  result.evaluations = evaluations;
  return result;
}

}  // namespace fairlink

#endif  // FAIRLINK_OPTIMIZE_HPP
