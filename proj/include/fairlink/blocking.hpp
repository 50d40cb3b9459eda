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

#ifndef FAIRLINK_BLOCKING_HPP
#define FAIRLINK_BLOCKING_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairlink/dp.hpp"
#include "fairlink/encoding.hpp"
#include "fairlink/rng.hpp"

namespace fairlink {

enum class Scenario { kBaseline1, kBaseline2, kMethodA, kMethodB };

inline const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kBaseline1: return "baseline1";
    case Scenario::kBaseline2: return "baseline2";
    case Scenario::kMethodA: return "method_a";
    case Scenario::kMethodB: return "method_b";
  }
  return "?";
}

inline Scenario scenario_from_name(const std::string& name) {
  if (name == "baseline1") return Scenario::kBaseline1;
  if (name == "baseline2") return Scenario::kBaseline2;
  if (name == "method_a") return Scenario::kMethodA;
  if (name == "method_b") return Scenario::kMethodB;
  throw std::invalid_argument("unknown scenario: " + name);
}

/// Per-run perturbation parameters: which scenario, the per-group budgets
/// and flip probabilities, the composed overall budget, the classification
/// threshold, and the perturbation seed.
struct ScenarioConfig {
  Scenario scenario = Scenario::kBaseline2;
  std::vector<double> per_group_eps;
  std::vector<double> per_group_flip;
  double overall_eps = 0.0;
  double threshold = 0.8;
  std::uint64_t seed = 0;

  void validate() const {
    if (scenario == Scenario::kBaseline1) return;
    if (per_group_eps.empty() || per_group_eps.size() != per_group_flip.size()) {
      throw std::invalid_argument("scenario: per-group eps/flip size mismatch");
    }
    for (double e : per_group_eps) {
      if (e <= 0.0) throw std::invalid_argument("scenario: eps must be > 0");
    }
    for (double f : per_group_flip) {
      if (f < 0.0 || f > 1.0) throw std::invalid_argument("scenario: flip outside [0,1]");
    }
    const bool eps_uniform = std::all_of(per_group_eps.begin(), per_group_eps.end(),
                                         [&](double e) { return e == per_group_eps[0]; });
    const bool flip_uniform = std::all_of(per_group_flip.begin(), per_group_flip.end(),
                                          [&](double f) { return f == per_group_flip[0]; });
    switch (scenario) {
      case Scenario::kBaseline2:
        if (!eps_uniform || !flip_uniform) {
          throw std::invalid_argument("baseline2 requires uniform eps and flip");
        }
        break;
      case Scenario::kMethodA:
        if (!eps_uniform) throw std::invalid_argument("method A requires uniform eps");
        break;
      case Scenario::kMethodB: {
        if (!flip_uniform) throw std::invalid_argument("method B requires uniform flip");
        const double composed = compose_budget(per_group_eps);
        if (std::fabs(composed - overall_eps) > 1e-9) {
          throw std::invalid_argument("method B budgets do not compose to eps_overall");
        }
        break;
      }
      default: break;
    }
  }
};

/// One blocking bin: label plus members of every group, originals first.
/// Dummies inherit the progenitor's bin; their labels are never recomputed.
struct Bin {
  BinLabel label;
  std::vector<BloomFilter> members;

  int group_count(int group, bool originals_only = false) const {
    int c = 0;
    for (const auto& f : members) {
      if (f.group == group && (!originals_only || !f.is_dummy)) ++c;
    }
    return c;
  }
};

struct BinnedDataset {
  std::map<BinLabel, Bin> bins;
  int n_l = 0;

  std::size_t total_records() const {
    std::size_t n = 0;
    for (const auto& [label, bin] : bins) n += bin.members.size();
    return n;
  }

  int group_total(int group, bool originals_only = false) const {
    int c = 0;
    for (const auto& [label, bin] : bins) c += bin.group_count(group, originals_only);
    return c;
  }
};

/// Bins encoded records by their Bloom filter label.
inline BinnedDataset block_dataset(const std::vector<BloomFilter>& encoded,
                                   const EncodingConfig& cfg) {
  cfg.validate();
  BinnedDataset out;
  out.n_l = cfg.n_l;
  for (const auto& f : encoded) {
    if (f.size() != cfg.n_l) throw std::invalid_argument("block_dataset: filter length mismatch");
    const BinLabel label = bin_label(f, cfg);
    auto& bin = out.bins[label];
    bin.label = label;
    bin.members.push_back(f);
  }
  return out;
}

/// Creates a dummy by inverting each bit of the progenitor independently
/// with probability flip. Group is inherited; the source entity id is
/// cleared (released views must not link dummies back).
inline BloomFilter make_dummy(const BloomFilter& progenitor, double flip, rng::Stream& stream) {
  if (flip < 0.0 || flip > 1.0) throw std::invalid_argument("make_dummy: flip outside [0,1]");
  BloomFilter dummy = progenitor;
  dummy.is_dummy = true;
  dummy.source_entity_id.clear();
  for (int i = 0; i < dummy.size(); ++i) {
    if (stream.bernoulli(flip)) dummy.flip(i);
  }
  return dummy;
}

/// Feature-level DP blocking: for each bin and group, draws the dummy count
/// from eps_g-scaled Laplace noise (clamped to [0, N_bg]), picks that many
/// progenitors without replacement from the bin's group-g originals, and
/// appends flip_g-flipped dummies. Originals are never removed. Baseline 1
/// passes the input through unchanged.
inline BinnedDataset apply_feature_level_dp(const BinnedDataset& binned,
                                            const ScenarioConfig& scenario,
                                            const PrivacyBudget& budget) {
  scenario.validate();
  if (scenario.scenario == Scenario::kBaseline1) return binned;
  if (budget.group_count() != static_cast<int>(scenario.per_group_flip.size())) {
    throw std::invalid_argument("apply_feature_level_dp: budget/flip group count mismatch");
  }

  BinnedDataset out = binned;
  for (auto& [label, bin] : out.bins) {
    const std::uint64_t label_tag =
        rng::hash64(label.to_string());
    for (int g = 1; g <= budget.group_count(); ++g) {
      // Independent substream per (bin, group); count, progenitor selection
      // and bit flips all come from it in that order.
      rng::Stream stream = rng::derive(scenario.seed, "feature-dp",
                                       {label_tag, static_cast<std::uint64_t>(g)});
      std::vector<std::size_t> group_members;
      for (std::size_t i = 0; i < bin.members.size(); ++i) {
        if (!bin.members[i].is_dummy && bin.members[i].group == g) group_members.push_back(i);
      }
      long n_dummy = dummy_count_draw(budget.eps_for(g), budget.sensitivity, stream);
      n_dummy = std::min<long>(n_dummy, static_cast<long>(group_members.size()));
      if (n_dummy <= 0) continue;

      // Partial Fisher–Yates: the first n_dummy entries become the sample.
      for (long i = 0; i < n_dummy; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(i) + stream.uniform_below(group_members.size() - i);
        std::swap(group_members[static_cast<std::size_t>(i)], group_members[j]);
      }
      const double flip = scenario.per_group_flip[static_cast<std::size_t>(g - 1)];
      for (long i = 0; i < n_dummy; ++i) {
        bin.members.push_back(
            make_dummy(bin.members[group_members[static_cast<std::size_t>(i)]], flip, stream));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization. Released view ("fairlink-bins 1") carries hex bits, group
// and bin label only; is_dummy is written as 0 for every row and entity ids
// are dropped. The private sidecar ("fairlink-bins-private 1") keeps
// is_dummy and the source entity id per row index, for evaluation only.

inline void save_binned(const std::string& path, const std::string& sidecar_path,
                        const BinnedDataset& binned) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write binned file: " + path);
  std::ofstream priv(sidecar_path, std::ios::binary);
  if (!priv) throw std::runtime_error("cannot write sidecar file: " + sidecar_path);
  out << "fairlink-bins 1 n_l=" << binned.n_l << "\n";
  priv << "fairlink-bins-private 1\n";
  std::size_t row = 0;
  for (const auto& [label, bin] : binned.bins) {
    for (const auto& f : bin.members) {
      out << f.to_hex() << ' ' << f.group << ' ' << 0 << ' ' << label.to_string() << "\n";
      priv << row << ' ' << (f.is_dummy ? 1 : 0) << ' '
           << (f.source_entity_id.empty() ? "-" : f.source_entity_id) << "\n";
      ++row;
    }
  }
}

inline BinnedDataset load_binned(const std::string& path, const std::string& sidecar_path = "") {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open binned file: " + path);
  std::string magic, n_l_field;
  int version = 0;
  in >> magic >> version >> n_l_field;
  if (magic != "fairlink-bins" || version != 1 || n_l_field.rfind("n_l=", 0) != 0) {
    throw std::runtime_error("unrecognized binned file header: " + path);
  }
  BinnedDataset out;
  out.n_l = std::stoi(n_l_field.substr(4));

  struct PrivateRow {
    bool is_dummy = false;
    std::string entity;
  };
  std::vector<PrivateRow> private_rows;
  if (!sidecar_path.empty()) {
    std::ifstream priv(sidecar_path);
    if (!priv) throw std::runtime_error("cannot open sidecar file: " + sidecar_path);
    std::string pmagic;
    int pversion = 0;
    priv >> pmagic >> pversion;
    if (pmagic != "fairlink-bins-private" || pversion != 1) {
      throw std::runtime_error("unrecognized sidecar header: " + sidecar_path);
    }
    std::size_t idx;
    int dummy;
    std::string entity;
    while (priv >> idx >> dummy >> entity) {
      if (idx != private_rows.size()) throw std::runtime_error("sidecar rows out of order");
      private_rows.push_back({dummy != 0, entity == "-" ? "" : entity});
    }
  }

  std::string hex, label_str;
  int group = 0, dummy = 0;
  std::size_t row = 0;
  while (in >> hex >> group >> dummy >> label_str) {
    BloomFilter f = BloomFilter::from_hex(hex, out.n_l);
    f.group = group;
    f.is_dummy = dummy != 0;
    if (row < private_rows.size()) {
      f.is_dummy = private_rows[row].is_dummy;
      f.source_entity_id = private_rows[row].entity;
    }
    const BinLabel label = BinLabel::from_string(label_str);
    auto& bin = out.bins[label];
    bin.label = label;
    bin.members.push_back(std::move(f));
    ++row;
  }
  if (!private_rows.empty() && row != private_rows.size()) {
    throw std::runtime_error("sidecar row count mismatch");
  }
  return out;
}

}  // namespace fairlink

#endif  // FAIRLINK_BLOCKING_HPP
