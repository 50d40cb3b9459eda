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

#ifndef FAIRLINK_LINKAGE_HPP
#define FAIRLINK_LINKAGE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairlink/blocking.hpp"
#include "fairlink/encoding.hpp"
#include "fairlink/records.hpp"
#include "fairlink/rng.hpp"

namespace fairlink {

/// One scored candidate pair. involves_dummy and the entity ids behind the
/// filters are evaluation-only; classifiers see the Dice score alone.
struct CandidatePair {
  const BloomFilter* left = nullptr;
  const BloomFilter* right = nullptr;
  double dice_score = 0.0;

  bool involves_dummy() const { return left->is_dummy || right->is_dummy; }
  int group_left() const { return left->group; }
  int group_right() const { return right->group; }
};

/// Identity blocking strategy: for every label present on both sides, the
/// full cross product of bin members (originals and dummies).
inline std::vector<CandidatePair> candidate_pairs(const BinnedDataset& binned_a,
                                                  const BinnedDataset& binned_b) {
  std::vector<CandidatePair> pairs;
  for (const auto& [label, bin_a] : binned_a.bins) {
    const auto it = binned_b.bins.find(label);
    if (it == binned_b.bins.end()) continue;
    for (const auto& fa : bin_a.members) {
      for (const auto& fb : it->second.members) {
        pairs.push_back({&fa, &fb, dice(fa, fb)});
      }
    }
  }
  return pairs;
}

/// Threshold classifier: match iff dice > T (strict).
inline std::vector<bool> classify_threshold(const std::vector<CandidatePair>& pairs, double t) {
  if (t <= 0.0 || t >= 1.0) throw std::invalid_argument("classify_threshold: T outside (0,1)");
  std::vector<bool> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = pairs[i].dice_score > t;
  return out;
}

// ---------------------------------------------------------------------------
// Logistic classifier on the single Dice feature

struct TrainingConfig {
  double learning_rate = 0.5;
  int epochs = 5000;
  double tolerance = 1e-7;
};

struct LogisticModel {
  double weight = 0.0;
  double bias = 0.0;
  TrainingConfig training_config;

  double predict_probability(double dice_score) const {
    return 1.0 / (1.0 + std::exp(-(weight * dice_score + bias)));
  }

  /// Dice value where the predicted probability crosses 0.5.
  double decision_boundary() const {
    if (weight == 0.0) throw std::runtime_error("logistic model: degenerate weight");
    return -bias / weight;
  }
};

struct LabeledScore {
  double dice_score = 0.0;
  bool is_match = false;
};

/// Fits weight and bias by batch gradient descent on the mean log-loss,
/// from zero initialization. Deterministic for a fixed sample order.
inline LogisticModel train_logistic(const std::vector<LabeledScore>& sample,
                                    const TrainingConfig& config = {}) {
  std::size_t positives = 0;
  for (const auto& s : sample) positives += s.is_match ? 1 : 0;
  if (sample.empty() || positives == 0 || positives == sample.size()) {
    throw std::runtime_error("train_logistic: sample must contain both classes");
  }
  LogisticModel model;
  model.training_config = config;
  const double n = static_cast<double>(sample.size());
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double grad_w = 0.0, grad_b = 0.0;
    for (const auto& s : sample) {
      const double p = model.predict_probability(s.dice_score);
      const double err = p - (s.is_match ? 1.0 : 0.0);
      grad_w += err * s.dice_score;
      grad_b += err;
    }
    grad_w /= n;
    grad_b /= n;
    model.weight -= config.learning_rate * grad_w;
    model.bias -= config.learning_rate * grad_b;
    if (std::fabs(grad_w) < config.tolerance && std::fabs(grad_b) < config.tolerance) break;
  }
  if (!std::isfinite(model.weight) || !std::isfinite(model.bias)) {
    throw std::runtime_error("train_logistic: diverged to non-finite weights");
  }
  return model;
}

/// Match iff predicted probability > 0.5 (strict, so the zero model
/// predicts non-match everywhere).
inline std::vector<bool> classify_logistic(const std::vector<CandidatePair>& pairs,
                                           const LogisticModel& model) {
  std::vector<bool> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out[i] = model.predict_probability(pairs[i].dice_score) > 0.5;
  }
  return out;
}

/// Seeded training sample: uniform draw of candidate pairs labeled against
/// the ground truth, class-balanced 50/50 by downsampling non-matches.
inline std::vector<LabeledScore> build_training_sample(const std::vector<CandidatePair>& pairs,
                                                       const GroundTruth& gt,
                                                       std::size_t target_size,
                                                       std::uint64_t seed) {
  std::vector<LabeledScore> matches, non_matches;
  for (const auto& p : pairs) {
    const bool is_match = !p.involves_dummy() &&
                          gt.contains(p.left->source_entity_id, p.right->source_entity_id);
    (is_match ? matches : non_matches).push_back({p.dice_score, is_match});
  }
  rng::Stream stream = rng::derive(seed, "training-sample");
  auto take = [&stream](std::vector<LabeledScore>& from, std::size_t count) {
    count = std::min(count, from.size());
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + stream.uniform_below(from.size() - i);
      std::swap(from[i], from[j]);
    }
    from.resize(count);
  };
  const std::size_t per_class = std::max<std::size_t>(1, target_size / 2);
  take(matches, per_class);
  take(non_matches, std::min(per_class, matches.size()));
  matches.insert(matches.end(), non_matches.begin(), non_matches.end());
  return matches;
}

// ---------------------------------------------------------------------------
// Evaluation

struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;

  long total() const { return tp + fp + tn + fn; }
  double precision() const { return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp); }
  double recall() const { return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn); }
  double f_star() const {
    return tp + fp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp + fn);
  }
  double fpr() const { return fp + tn == 0 ? 0.0 : static_cast<double>(fp) / (fp + tn); }
  double fnr() const { return fn + tp == 0 ? 0.0 : static_cast<double>(fn) / (fn + tp); }
};

enum class GroupAttribution {
  kLeft,       // pair counted under the left (party A) record's group
  kBothSides,  // cross-group pairs counted under each side's group
};

struct LinkageReport {
  std::vector<ConfusionCounts> per_group;
  ConfusionCounts overall;
  std::vector<long> per_group_missed_matches;  // already included in fn
  std::vector<double> per_group_cost;          // same-group candidate pairs
  long cost_total = 0;                         // every scored candidate pair
  double fairness_loss = 0.0;
  double fairness = 1.0;
};

/// Scores predictions against the ground truth. A pair's true label is
/// match iff neither side is a dummy and the entity pair is in the ground
/// truth. Ground-truth matches whose records never met in a bin are counted
/// as false negatives under the left record's group, so recall reflects
/// blocking losses as well as classification losses.
inline LinkageReport evaluate(const std::vector<CandidatePair>& pairs,
                              const std::vector<bool>& predictions, const GroundTruth& gt,
                              const BinnedDataset& binned_a, const BinnedDataset& binned_b,
                              int group_count,
                              GroupAttribution attribution = GroupAttribution::kLeft) {
  if (pairs.size() != predictions.size()) {
    throw std::invalid_argument("evaluate: prediction count mismatch");
  }
  if (group_count < 1) throw std::invalid_argument("evaluate: bad group count");

  std::map<std::string, int> group_of_a, group_of_b;
  for (const auto& [label, bin] : binned_a.bins) {
    for (const auto& f : bin.members) {
      if (!f.is_dummy) group_of_a[f.source_entity_id] = f.group;
    }
  }
  for (const auto& [label, bin] : binned_b.bins) {
    for (const auto& f : bin.members) {
      if (!f.is_dummy) group_of_b[f.source_entity_id] = f.group;
    }
  }

  LinkageReport report;
  report.per_group.resize(static_cast<std::size_t>(group_count));
  report.per_group_missed_matches.assign(static_cast<std::size_t>(group_count), 0);
  report.per_group_cost.assign(static_cast<std::size_t>(group_count), 0.0);
  report.cost_total = static_cast<long>(pairs.size());

  std::set<std::pair<std::string, std::string>> compared_matches;

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const CandidatePair& p = pairs[i];
    const bool dummy_pair = p.involves_dummy();
    if (p.group_left() < 1 || p.group_left() > group_count || p.group_right() < 1 ||
        p.group_right() > group_count) {
      throw std::runtime_error("evaluate: group index out of range");
    }
    if (!p.left->is_dummy && !group_of_a.count(p.left->source_entity_id)) {
      throw std::runtime_error("evaluate: unknown left entity " + p.left->source_entity_id);
    }
    if (!p.right->is_dummy && !group_of_b.count(p.right->source_entity_id)) {
      throw std::runtime_error("evaluate: unknown right entity " + p.right->source_entity_id);
    }
    const bool is_match =
        !dummy_pair && gt.contains(p.left->source_entity_id, p.right->source_entity_id);
    if (is_match) compared_matches.insert({p.left->source_entity_id, p.right->source_entity_id});
    const bool predicted = predictions[i];

    auto tally = [&](ConfusionCounts& c) {
      if (is_match && predicted) ++c.tp;
      else if (is_match) ++c.fn;
      else if (predicted) ++c.fp;
      else ++c.tn;
    };
    tally(report.overall);
    tally(report.per_group[static_cast<std::size_t>(p.group_left() - 1)]);
    if (attribution == GroupAttribution::kBothSides && p.group_right() != p.group_left()) {
      tally(report.per_group[static_cast<std::size_t>(p.group_right() - 1)]);
    }
    if (p.group_left() == p.group_right()) {
      report.per_group_cost[static_cast<std::size_t>(p.group_left() - 1)] += 1.0;
    }
  }

  for (const auto& m : gt.matches) {
    if (compared_matches.count(m)) continue;
    const auto ga = group_of_a.find(m.first);
    const auto gb = group_of_b.find(m.second);
    if (ga == group_of_a.end() || gb == group_of_b.end()) continue;  // not in this instance
    ++report.overall.fn;
    ++report.per_group[static_cast<std::size_t>(ga->second - 1)].fn;
    ++report.per_group_missed_matches[static_cast<std::size_t>(ga->second - 1)];
    if (attribution == GroupAttribution::kBothSides && gb->second != ga->second) {
      ++report.per_group[static_cast<std::size_t>(gb->second - 1)].fn;
    }
  }

  double loss = 0.0;
  for (int i = 0; i < group_count; ++i) {
    for (int j = i + 1; j < group_count; ++j) {
      const auto& a = report.per_group[static_cast<std::size_t>(i)];
      const auto& b = report.per_group[static_cast<std::size_t>(j)];
      loss = std::max(loss, std::fabs(a.fpr() - b.fpr()));
      loss = std::max(loss, std::fabs(a.fnr() - b.fnr()));
    }
  }
  report.fairness_loss = loss;
  report.fairness = 1.0 - loss;
  return report;
}

}  // namespace fairlink

#endif  // FAIRLINK_LINKAGE_HPP
