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

#ifndef FAIRLINK_ANALYTICS_HPP
#define FAIRLINK_ANALYTICS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairlink/blocking.hpp"
#include "fairlink/records.hpp"

namespace fairlink {

/// Parameters of the closed-form models. fill_p is the per-bit fill
/// probability of an encoded filter; the modeling default is 1/2 and the
/// empirically measured rate may be substituted. Per-bit mean and standard
/// deviation are always derived from fill_p.
struct AnalyticsParams {
  int n_l = 300;
  double threshold = 0.8;
  double fill_p = 0.5;
  double delta_b = 1.0;
  double n_bins = 0.0;

  double mu() const { return fill_p; }
  double sigma_bit() const { return std::sqrt(fill_p * (1.0 - fill_p)); }

  void validate() const {
    if (n_l <= 0) throw std::invalid_argument("analytics: n_l must be positive");
    if (threshold <= 0.0 || threshold >= 1.0) {
      throw std::invalid_argument("analytics: threshold outside (0,1)");
    }
    if (fill_p <= 0.0 || fill_p >= 1.0) {
      throw std::invalid_argument("analytics: fill probability outside (0,1)");
    }
    if (delta_b <= 0.0) throw std::invalid_argument("analytics: sensitivity must be > 0");
  }
};

/// Per-group confusion counts estimated from original-record candidate
/// pairs, plus the pair-count inputs of the cost model.
struct GroupBaseRates {
  double tp = 0.0;
  double fp = 0.0;
  double tn = 0.0;
  double fn = 0.0;
  double base_pairs = 0.0;  // same-group candidate pairs: sum_b N_bA,g * N_bB,g
  double n_a = 0.0;         // group total, party A originals
  double n_b = 0.0;         // group total, party B originals

  double fnr() const {
    if (fn + tp <= 0.0) throw std::runtime_error("base rates: FNR undefined (no positives)");
    return fn / (fn + tp);
  }
};

struct BaseRates {
  std::vector<GroupBaseRates> per_group;  // index g-1
  double n_bins = 0.0;                    // shared bin-label count

  int group_count() const { return static_cast<int>(per_group.size()); }

  const GroupBaseRates& group(int g) const {
    if (g < 1 || g > group_count()) throw std::invalid_argument("base rates: bad group index");
    return per_group[static_cast<std::size_t>(g - 1)];
  }
};

// ---------------------------------------------------------------------------
// Closed forms

/// Expected Dice between a dummy and its progenitor:
/// (flip*n_l / (2*(1-flip)*n_1) + 1)^-1. Continuous limit 0 at flip = 1.
inline double dummy_dice_expected(double flip, int n_l, double n_1) {
  if (flip < 0.0 || flip > 1.0) throw std::invalid_argument("dummy dice: flip outside [0,1]");
  if (!(n_1 > 0.0) || n_1 > n_l) throw std::invalid_argument("dummy dice: n_1 outside (0, n_l]");
  if (flip == 1.0) return 0.0;
  return 1.0 / (flip * n_l / (2.0 * (1.0 - flip) * n_1) + 1.0);
}

/// Probability that a dummy/progenitor pair crosses the match threshold,
/// with the filter fill count treated as Normal(n_l*p, n_l*p(1-p)):
///   P = 1/2 * [1 - erf( sqrt(n_l)*T*flip / (2*sqrt(2)*sigma*(1-T)*(1-flip))
///                       - sqrt(n_l)*mu / (sigma*sqrt(2)) )].
inline double fp_probability(double flip, const AnalyticsParams& params) {
  params.validate();
  if (flip < 0.0 || flip > 1.0) throw std::invalid_argument("fp_probability: flip outside [0,1]");
  if (flip == 1.0) return 0.0;
  const double root_nl = std::sqrt(static_cast<double>(params.n_l));
  const double t = params.threshold;
  const double arg =
      root_nl * t * flip / (2.0 * std::sqrt(2.0) * params.sigma_bit() * (1.0 - t) * (1.0 - flip)) -
      root_nl * params.mu() / (params.sigma_bit() * std::sqrt(2.0));
  return 0.5 * (1.0 - std::erf(arg));
}

/// Expected dummy-involving candidate pairs for group g:
/// (N_A,g + N_B,g) * dB/(2 eps) + N_bins * dB^2/(4 eps^2).
inline double expected_dummy_pairs(double n_a_g, double n_b_g, double eps_g, double delta_b,
                                   double n_bins) {
  if (eps_g <= 0.0) throw std::invalid_argument("expected_dummy_pairs: eps must be > 0");
  if (n_a_g < 0.0 || n_b_g < 0.0 || n_bins < 0.0) {
    throw std::invalid_argument("expected_dummy_pairs: counts must be non-negative");
  }
  return (n_a_g + n_b_g) * delta_b / (2.0 * eps_g) +
         n_bins * delta_b * delta_b / (4.0 * eps_g * eps_g);
}

/// Total expected candidate-pair cost for group g: realized same-group
/// original pairs plus the expected dummy-involving pairs.
inline double expected_pair_cost(double n_a_g, double n_b_g, double eps_g, double delta_b,
                                 double n_bins, double base_pairs_g) {
  if (base_pairs_g < 0.0) throw std::invalid_argument("expected_pair_cost: negative base pairs");
  return base_pairs_g + expected_dummy_pairs(n_a_g, n_b_g, eps_g, delta_b, n_bins);
}

/// Model false-positive rate for group g. Every dummy-involving pair lands
/// in FP with probability fp_probability(flip_g) and in TN otherwise, so
///   FPR_g = (P_fp * E_dum + FP_ori) / (E_dum + FP_ori + TN_ori).
inline double predicted_fpr(int g, double eps_g, double flip_g, const BaseRates& base,
                            const AnalyticsParams& params) {
  const GroupBaseRates& gb = base.group(g);
  const double e_dum = expected_dummy_pairs(gb.n_a, gb.n_b, eps_g, params.delta_b, base.n_bins);
  const double denom = e_dum + gb.fp + gb.tn;
  if (denom <= 0.0) throw std::runtime_error("predicted_fpr: rate undefined (empty denominator)");
  return (fp_probability(flip_g, params) * e_dum + gb.fp) / denom;
}

/// Equalized-odds model loss: max over group pairs of |dFPR| and |dFNR|.
/// FPRs come from the model; FNRs come from the base rates alone (dummies
/// affect false positives, never false negatives).
inline double model_fairness_loss(const std::vector<double>& per_group_flip,
                                  const std::vector<double>& per_group_eps,
                                  const BaseRates& base, const AnalyticsParams& params) {
  const int g_count = base.group_count();
  if (g_count < 2) throw std::invalid_argument("fairness loss needs at least two groups");
  if (static_cast<int>(per_group_flip.size()) != g_count ||
      static_cast<int>(per_group_eps.size()) != g_count) {
    throw std::invalid_argument("fairness loss: parameter group count mismatch");
  }
  std::vector<double> fpr(static_cast<std::size_t>(g_count));
  std::vector<double> fnr(static_cast<std::size_t>(g_count));
  for (int g = 1; g <= g_count; ++g) {
    fpr[static_cast<std::size_t>(g - 1)] =
        predicted_fpr(g, per_group_eps[static_cast<std::size_t>(g - 1)],
                      per_group_flip[static_cast<std::size_t>(g - 1)], base, params);
    fnr[static_cast<std::size_t>(g - 1)] = base.group(g).fnr();
  }
  double loss = 0.0;
  for (int i = 0; i < g_count; ++i) {
    for (int j = i + 1; j < g_count; ++j) {
      loss = std::max(loss, std::fabs(fpr[static_cast<std::size_t>(i)] -
                                      fpr[static_cast<std::size_t>(j)]));
      loss = std::max(loss, std::fabs(fnr[static_cast<std::size_t>(i)] -
                                      fnr[static_cast<std::size_t>(j)]));
    }
  }
  return loss;
}

// ---------------------------------------------------------------------------
// Base-rate estimation

/// Estimates per-group base rates by threshold-classifying a uniform
/// per-group sample of the original-record candidate pairs (identity label
/// pairing) and scaling the counts to the pair population. Ground-truth
/// matches whose records never share a bin are counted into FN exactly.
/// Pairs are attributed to the left record's group.
inline BaseRates estimate_base_rates(const BinnedDataset& binned_a, const BinnedDataset& binned_b,
                                     const GroundTruth& gt, int group_count, double threshold,
                                     std::size_t sample_size, std::uint64_t seed) {
  if (group_count < 1) throw std::invalid_argument("estimate_base_rates: bad group count");
  if (sample_size < 1) throw std::invalid_argument("estimate_base_rates: sample size must be >= 1");

  BaseRates base;
  base.per_group.resize(static_cast<std::size_t>(group_count));

  struct PairRef {
    const BloomFilter* left;
    const BloomFilter* right;
  };
  std::vector<std::vector<PairRef>> pairs_by_group(static_cast<std::size_t>(group_count));
  std::set<std::pair<std::string, std::string>> compared_matches;

  for (const auto& [label, bin_a] : binned_a.bins) {
    const auto it = binned_b.bins.find(label);
    if (it == binned_b.bins.end()) continue;
    base.n_bins += 1.0;
    for (int g = 1; g <= group_count; ++g) {
      base.per_group[static_cast<std::size_t>(g - 1)].base_pairs +=
          static_cast<double>(bin_a.group_count(g, true)) *
          static_cast<double>(it->second.group_count(g, true));
    }
    for (const auto& fa : bin_a.members) {
      if (fa.is_dummy) continue;
      if (fa.group < 1 || fa.group > group_count) {
        throw std::runtime_error("estimate_base_rates: group index out of range");
      }
      for (const auto& fb : it->second.members) {
        if (fb.is_dummy) continue;
        pairs_by_group[static_cast<std::size_t>(fa.group - 1)].push_back({&fa, &fb});
        if (gt.contains(fa.source_entity_id, fb.source_entity_id)) {
          compared_matches.insert({fa.source_entity_id, fb.source_entity_id});
        }
      }
    }
  }

  for (int g = 1; g <= group_count; ++g) {
    base.per_group[static_cast<std::size_t>(g - 1)].n_a = binned_a.group_total(g, true);
    base.per_group[static_cast<std::size_t>(g - 1)].n_b = binned_b.group_total(g, true);
  }

  // Group attribution of blocking-missed matches needs the record's group.
  std::map<std::string, int> group_of_a;
  for (const auto& [label, bin] : binned_a.bins) {
    for (const auto& f : bin.members) {
      if (!f.is_dummy) group_of_a[f.source_entity_id] = f.group;
    }
  }

  rng::Stream stream = rng::derive(seed, "base-rates");
  for (int g = 1; g <= group_count; ++g) {
    auto& pairs = pairs_by_group[static_cast<std::size_t>(g - 1)];
    GroupBaseRates& gb = base.per_group[static_cast<std::size_t>(g - 1)];
    if (pairs.empty()) {
      throw std::runtime_error("estimate_base_rates: group " + std::to_string(g) +
                               " absent from candidate pairs (insufficient sample)");
    }
    const std::size_t take = std::min(sample_size, pairs.size());
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + stream.uniform_below(pairs.size() - i);
      std::swap(pairs[i], pairs[j]);
    }
    double tp = 0.0, fp = 0.0, tn = 0.0, fn = 0.0;
    for (std::size_t i = 0; i < take; ++i) {
      const bool is_match =
          gt.contains(pairs[i].left->source_entity_id, pairs[i].right->source_entity_id);
      const bool predicted = dice(*pairs[i].left, *pairs[i].right) > threshold;
      if (is_match && predicted) tp += 1.0;
      else if (is_match) fn += 1.0;
      else if (predicted) fp += 1.0;
      else tn += 1.0;
    }
    const double scale = static_cast<double>(pairs.size()) / static_cast<double>(take);
    gb.tp = tp * scale;
    gb.fp = fp * scale;
    gb.tn = tn * scale;
    gb.fn = fn * scale;
  }

  for (const auto& m : gt.matches) {
    if (compared_matches.count(m)) continue;
    const auto it = group_of_a.find(m.first);
    if (it == group_of_a.end()) continue;  // match not present in this instance
    base.per_group[static_cast<std::size_t>(it->second - 1)].fn += 1.0;
  }
  return base;
}

}  // namespace fairlink

#endif  // FAIRLINK_ANALYTICS_HPP
