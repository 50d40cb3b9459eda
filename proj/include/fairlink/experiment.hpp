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

#ifndef FAIRLINK_EXPERIMENT_HPP
#define FAIRLINK_EXPERIMENT_HPP

#include <cstdint>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairlink/analytics.hpp"
#include "fairlink/blocking.hpp"
#include "fairlink/encoding.hpp"
#include "fairlink/linkage.hpp"
#include "fairlink/optimize.hpp"
#include "fairlink/records.hpp"

namespace fairlink {

/// Stable textual form for doubles in report files; reruns with the same
/// seed must be byte-identical.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

enum class ClassifierKind { kThreshold, kLogistic };

inline const char* classifier_name(ClassifierKind c) {
  return c == ClassifierKind::kThreshold ? "threshold" : "logistic";
}

struct ExperimentConfig {
  // Data source: CSV paths, or the built-in synthetic generator when empty.
  std::string dataset_a_path;
  std::string dataset_b_path;
  std::string ground_truth_path;
  int synthetic_n = 500;
  double overlap = 0.5;
  std::vector<double> group_proportions = {0.5, 0.5};
  CorruptionConfig corruption;          // applied to party B when rate > 0
  // Encoding.
  int n_l = 300;
  int k = 30;
  int q = 2;
  int n_b = 30;
  // Scenarios and sweep.
  std::vector<Scenario> scenarios = {Scenario::kBaseline1, Scenario::kBaseline2,
                                     Scenario::kMethodA, Scenario::kMethodB};
  std::vector<double> budget_grid = {0.1, 1.0, 10.0};
  double flip = 0.5;
  ClassifierKind classifier = ClassifierKind::kThreshold;
  double threshold = 0.8;
  int repetitions = 10;
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";
  // Model and optimizer knobs.
  bool use_measured_fill = false;  // default: the p = 1/2 modeling assumption
  std::size_t base_rate_sample = 5000;
  double method_a_grid_step = 0.01;
  double method_b_tol = 1e-6;
  std::size_t training_sample = 400;
  GroupAttribution attribution = GroupAttribution::kLeft;

  int group_count() const { return static_cast<int>(group_proportions.size()); }

  void validate() const {
    if (repetitions < 1) throw std::invalid_argument("experiment: repetitions must be >= 1");
    if (budget_grid.empty()) throw std::invalid_argument("experiment: empty budget grid");
    for (double e : budget_grid) {
      if (e <= 0.0) throw std::invalid_argument("experiment: budgets must be > 0");
    }
    if (scenarios.empty()) throw std::invalid_argument("experiment: no scenarios selected");
    if (flip < 0.0 || flip > 1.0) throw std::invalid_argument("experiment: flip outside [0,1]");
  }
};

/// One repetition's prepared inputs, shared by every scenario and budget so
/// that scenario comparisons see identical originals.
struct PreparedInstance {
  GroundTruth gt;
  EncodingConfig enc;
  BinnedDataset binned_a;
  BinnedDataset binned_b;
  BaseRates base;
  AnalyticsParams params;
  int group_count = 2;
};

inline PreparedInstance prepare_instance(const ExperimentConfig& cfg, int rep) {
  cfg.validate();
  PreparedInstance inst;
  inst.group_count = cfg.group_count();

  Dataset a, b;
  if (!cfg.dataset_a_path.empty()) {
    const Schema schema = Schema::default_person();
    a = load_dataset(cfg.dataset_a_path, schema);
    b = load_dataset(cfg.dataset_b_path, schema);
    inst.gt = load_ground_truth(cfg.ground_truth_path);
    inst.group_count = schema.group_count();
  } else {
    auto [ga, gb, gt] = generate_synthetic(
        cfg.synthetic_n, cfg.overlap, cfg.group_proportions,
        rng::derive(cfg.master_seed, "data", {static_cast<std::uint64_t>(rep)}).next_u64());
    a = std::move(ga);
    b = std::move(gb);
    inst.gt = std::move(gt);
  }
  if (cfg.corruption.corruption_rate > 0.0 || !cfg.corruption.per_group_rates.empty()) {
    b = corrupt_dataset(b, cfg.corruption,
                        rng::derive(cfg.master_seed, "corrupt", {static_cast<std::uint64_t>(rep)})
                            .next_u64());
  }

  inst.enc.n_l = cfg.n_l;
  inst.enc.k = cfg.k;
  inst.enc.q = cfg.q;
  inst.enc.hash_seed =
      rng::derive(cfg.master_seed, "hash", {static_cast<std::uint64_t>(rep)}).next_u64();
  inst.enc.label_positions = default_label_positions(cfg.n_l, cfg.n_b, inst.enc.hash_seed);

  const std::vector<BloomFilter> enc_a = encode_dataset(a, inst.enc);
  const std::vector<BloomFilter> enc_b = encode_dataset(b, inst.enc);
  inst.binned_a = block_dataset(enc_a, inst.enc);
  inst.binned_b = block_dataset(enc_b, inst.enc);

  inst.base = estimate_base_rates(
      inst.binned_a, inst.binned_b, inst.gt, inst.group_count, cfg.threshold,
      cfg.base_rate_sample,
      rng::derive(cfg.master_seed, "base-rates", {static_cast<std::uint64_t>(rep)}).next_u64());

  inst.params.n_l = cfg.n_l;
  inst.params.threshold = cfg.threshold;
  inst.params.delta_b = 1.0;
  inst.params.n_bins = inst.base.n_bins;
  if (cfg.use_measured_fill) {
    std::vector<BloomFilter> all = enc_a;
    all.insert(all.end(), enc_b.begin(), enc_b.end());
    inst.params.fill_p = measure_fill_rate(all);
  }
  return inst;
}

/// Derives the per-group budgets and flips for one (scenario, eps) cell.
/// Uniform scenarios use eps_g = G * eps so that harmonic composition
/// returns eps; methods A and B run their optimizers on the instance's
/// base rates.
inline ScenarioConfig derive_scenario_config(Scenario scenario, double eps_overall,
                                             const ExperimentConfig& cfg,
                                             const PreparedInstance& inst,
                                             std::uint64_t perturb_seed) {
  ScenarioConfig sc;
  sc.scenario = scenario;
  sc.overall_eps = eps_overall;
  sc.threshold = cfg.threshold;
  sc.seed = perturb_seed;
  if (scenario == Scenario::kBaseline1) return sc;

  const int g = inst.group_count;
  const std::vector<double> uniform_eps(static_cast<std::size_t>(g), eps_overall * g);
  const std::vector<double> uniform_flip(static_cast<std::size_t>(g), cfg.flip);
  switch (scenario) {
    case Scenario::kBaseline2:
      sc.per_group_eps = uniform_eps;
      sc.per_group_flip = uniform_flip;
      break;
    case Scenario::kMethodA: {
      sc.per_group_eps = uniform_eps;
      sc.per_group_flip =
          method_a_search(uniform_eps, inst.base, inst.params, cfg.method_a_grid_step)
              .per_group_values;
      break;
    }
    case Scenario::kMethodB: {
      sc.per_group_flip = uniform_flip;
      sc.per_group_eps =
          method_b_allocate(eps_overall, uniform_flip, inst.base, inst.params, cfg.method_b_tol)
              .per_group_values;
      break;
    }
    default: break;
  }
  sc.validate();
  return sc;
}

struct RunResult {
  ScenarioConfig scenario;
  LinkageReport report;
};

/// Runs perturb -> pair -> classify -> evaluate for one prepared instance
/// under one scenario configuration. The two parties perturb independently.
inline RunResult run_single(const PreparedInstance& inst, const ScenarioConfig& sc,
                            const ExperimentConfig& cfg, std::uint64_t run_seed) {
  PrivacyBudget budget;
  if (sc.scenario != Scenario::kBaseline1) budget = PrivacyBudget(sc.per_group_eps, 1.0);

  ScenarioConfig sc_a = sc;
  sc_a.seed = rng::derive(run_seed, "party-a").next_u64();
  ScenarioConfig sc_b = sc;
  sc_b.seed = rng::derive(run_seed, "party-b").next_u64();
  const BinnedDataset pa = apply_feature_level_dp(inst.binned_a, sc_a, budget);
  const BinnedDataset pb = apply_feature_level_dp(inst.binned_b, sc_b, budget);

  const std::vector<CandidatePair> pairs = candidate_pairs(pa, pb);
  std::vector<bool> predictions;
  if (cfg.classifier == ClassifierKind::kThreshold) {
    predictions = classify_threshold(pairs, cfg.threshold);
  } else {
    const auto sample = build_training_sample(pairs, inst.gt, cfg.training_sample,
                                              rng::derive(run_seed, "training").next_u64());
    predictions = classify_logistic(pairs, train_logistic(sample));
  }

  RunResult result;
  result.scenario = sc;
  result.report =
      evaluate(pairs, predictions, inst.gt, pa, pb, inst.group_count, cfg.attribution);
  return result;
}

// ---------------------------------------------------------------------------
// Sweep driver and report files

namespace detail {

inline std::string join_doubles(const std::vector<double>& xs, char sep = ';') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(sep);
    out += fmt_double(xs[i]);
  }
  return out.empty() ? "-" : out;
}

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  long n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return n == 0 ? 0.0 : sum / n; }
  double stddev() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = (sum_sq - n * m * m) / (n - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
};

}  // namespace detail

/// Runs the full sweep and writes runs.csv, aggregates.csv and manifest.csv
/// under cfg.out_dir. Every (scenario, eps, repetition) appears in the
/// manifest exactly once; a failed run is recorded and the sweep continues.
/// Returns true when every run succeeded.
inline bool run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out_dir);

  std::vector<PreparedInstance> instances;
  instances.reserve(static_cast<std::size_t>(cfg.repetitions));
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    instances.push_back(prepare_instance(cfg, rep));
  }

  csv::Table runs;
  runs.header = {"scenario",  "eps_overall", "rep",     "classifier", "group",
                 "eps_g",     "flip_g",      "tp",      "fp",         "tn",
                 "fn",        "missed",      "precision", "recall",   "f_star",
                 "fpr",       "fnr",         "fairness_loss", "fairness", "cost"};
  csv::Table manifest;
  manifest.header = {"scenario", "eps_overall", "rep", "status", "message"};
  // (scenario, eps, group-or-overall, metric) -> accumulator over reps
  std::map<std::string, detail::Accumulator> agg;
  bool all_ok = true;

  for (Scenario scenario : cfg.scenarios) {
    for (std::size_t ei = 0; ei < cfg.budget_grid.size(); ++ei) {
      const double eps = cfg.budget_grid[ei];
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        const std::uint64_t run_seed =
            rng::derive(cfg.master_seed, "run",
                        {rng::hash64(scenario_name(scenario)), static_cast<std::uint64_t>(ei),
                         static_cast<std::uint64_t>(rep)})
                .next_u64();
        std::string status = "ok", message = "-";
        try {
          const PreparedInstance& inst = instances[static_cast<std::size_t>(rep)];
          const ScenarioConfig sc = derive_scenario_config(scenario, eps, cfg, inst, run_seed);
          const RunResult run = run_single(inst, sc, cfg, run_seed);

          auto emit_row = [&](const std::string& group_name, const ConfusionCounts& c,
                              double eps_g, double flip_g, double cost) {
            runs.rows.push_back({scenario_name(scenario), fmt_double(eps), std::to_string(rep),
                                 classifier_name(cfg.classifier), group_name,
                                 eps_g > 0.0 ? fmt_double(eps_g) : "-",
                                 flip_g >= 0.0 ? fmt_double(flip_g) : "-",
                                 std::to_string(c.tp), std::to_string(c.fp), std::to_string(c.tn),
                                 std::to_string(c.fn), "-", fmt_double(c.precision()),
                                 fmt_double(c.recall()), fmt_double(c.f_star()),
                                 fmt_double(c.fpr()), fmt_double(c.fnr()),
                                 fmt_double(run.report.fairness_loss),
                                 fmt_double(run.report.fairness), fmt_double(cost)});
            const std::string key_base = std::string(scenario_name(scenario)) + "," +
                                         fmt_double(eps) + "," + group_name + ",";
            agg[key_base + "precision"].add(c.precision());
            agg[key_base + "recall"].add(c.recall());
            agg[key_base + "f_star"].add(c.f_star());
            agg[key_base + "fpr"].add(c.fpr());
            agg[key_base + "fnr"].add(c.fnr());
            agg[key_base + "fairness"].add(run.report.fairness);
            agg[key_base + "fairness_loss"].add(run.report.fairness_loss);
            agg[key_base + "cost"].add(cost);
          };

          for (int g = 1; g <= inst.group_count; ++g) {
            const bool noisy = run.scenario.scenario != Scenario::kBaseline1;
            emit_row("g" + std::to_string(g),
                     run.report.per_group[static_cast<std::size_t>(g - 1)],
                     noisy ? run.scenario.per_group_eps[static_cast<std::size_t>(g - 1)] : 0.0,
                     noisy ? run.scenario.per_group_flip[static_cast<std::size_t>(g - 1)] : -1.0,
                     run.report.per_group_cost[static_cast<std::size_t>(g - 1)]);
            auto& row = runs.rows.back();
            row[11] = std::to_string(
                run.report.per_group_missed_matches[static_cast<std::size_t>(g - 1)]);
          }
          emit_row("overall", run.report.overall, 0.0, -1.0,
                   static_cast<double>(run.report.cost_total));
        } catch (const std::exception& e) {
          status = "failed";
          message = e.what();
          all_ok = false;
        }
        manifest.rows.push_back(
            {scenario_name(scenario), fmt_double(eps), std::to_string(rep), status, message});
      }
    }
  }

  csv::Table aggregates;
  aggregates.header = {"scenario", "eps_overall", "group", "metric", "mean", "stddev", "n"};
  for (const auto& [key, acc] : agg) {
    std::vector<std::string> row = csv::split_line(key);
    row.push_back(fmt_double(acc.mean()));
    row.push_back(fmt_double(acc.stddev()));
    row.push_back(std::to_string(acc.n));
    aggregates.rows.push_back(std::move(row));
  }

  csv::write_file(cfg.out_dir + "/runs.csv", runs);
  csv::write_file(cfg.out_dir + "/aggregates.csv", aggregates);
  csv::write_file(cfg.out_dir + "/manifest.csv", manifest);
  return all_ok;
}

// ---------------------------------------------------------------------------
// Theory-vs-simulation oracle curves

/// Writes (flip, predicted, simulated) rows. The simulated column samples
/// each filter's fill bit-by-bit (Binomial(n_l, p) popcount), forms the
/// dummy/progenitor Dice from the flip proportions, and threshold-classifies
/// it; the predicted column is the closed-form fp_probability. The
/// simulation thereby checks the normal-approximation step against exact
/// binomial sampling.
inline std::vector<std::array<double, 3>> oracle_fp_curve(const AnalyticsParams& params,
                                                          const std::vector<double>& flip_grid,
                                                          int trials, std::uint64_t seed,
                                                          const std::string& out_path = "") {
  params.validate();
  if (trials < 1000) throw std::invalid_argument("oracle_fp_curve: need at least 1000 trials");
  std::vector<std::array<double, 3>> rows;
  rng::Stream stream = rng::derive(seed, "oracle-fp");
  for (double flip : flip_grid) {
    long hits = 0;
    for (int t = 0; t < trials; ++t) {
      long n1 = 0;
      for (int i = 0; i < params.n_l; ++i) n1 += stream.bernoulli(params.fill_p) ? 1 : 0;
      double sim_dice = 0.0;
      if (n1 > 0) {
        const double ones = static_cast<double>(n1);
        sim_dice = 2.0 * (1.0 - flip) * ones /
                   (ones + (1.0 - flip) * ones + flip * (params.n_l - ones));
      }
      if (sim_dice > params.threshold) ++hits;
    }
    rows.push_back({flip, fp_probability(flip, params),
                    static_cast<double>(hits) / static_cast<double>(trials)});
  }
  if (!out_path.empty()) {
    csv::Table t;
    t.header = {"flip", "predicted", "simulated"};
    for (const auto& r : rows) {
      t.rows.push_back({fmt_double(r[0]), fmt_double(r[1]), fmt_double(r[2])});
    }
    csv::write_file(out_path, t);
  }
  return rows;
}

struct FprCurveRow {
  double eps = 0.0;
  int group = 0;
  double predicted = 0.0;
  double simulated = 0.0;
};

/// Writes per-group (eps, predicted, simulated) rows: predicted from the
/// closed-form FPR model on each repetition's base rates, simulated from
/// end-to-end uniform-budget runs; both averaged over repetitions.
inline std::vector<FprCurveRow> oracle_fpr_curve(const ExperimentConfig& cfg,
                                                 const std::vector<double>& budget_grid,
                                                 int repetitions,
                                                 const std::string& out_path = "") {
  if (repetitions < 1) throw std::invalid_argument("oracle_fpr_curve: repetitions must be >= 1");
  ExperimentConfig local = cfg;
  local.repetitions = repetitions;
  local.validate();

  std::vector<PreparedInstance> instances;
  for (int rep = 0; rep < repetitions; ++rep) instances.push_back(prepare_instance(local, rep));

  std::vector<FprCurveRow> rows;
  for (double eps : budget_grid) {
    std::vector<detail::Accumulator> pred(static_cast<std::size_t>(local.group_count()));
    std::vector<detail::Accumulator> sim(static_cast<std::size_t>(local.group_count()));
    for (int rep = 0; rep < repetitions; ++rep) {
      const PreparedInstance& inst = instances[static_cast<std::size_t>(rep)];
      const std::uint64_t run_seed =
          rng::derive(local.master_seed, "oracle-fpr",
                      {static_cast<std::uint64_t>(rep), rng::hash64(fmt_double(eps))})
              .next_u64();
      const ScenarioConfig sc =
          derive_scenario_config(Scenario::kBaseline2, eps, local, inst, run_seed);
      const RunResult run = run_single(inst, sc, local, run_seed);
      for (int g = 1; g <= inst.group_count; ++g) {
        pred[static_cast<std::size_t>(g - 1)].add(
            predicted_fpr(g, sc.per_group_eps[static_cast<std::size_t>(g - 1)],
                          sc.per_group_flip[static_cast<std::size_t>(g - 1)], inst.base,
                          inst.params));
        sim[static_cast<std::size_t>(g - 1)].add(
            run.report.per_group[static_cast<std::size_t>(g - 1)].fpr());
      }
    }
    for (int g = 1; g <= local.group_count(); ++g) {
      rows.push_back({eps, g, pred[static_cast<std::size_t>(g - 1)].mean(),
                      sim[static_cast<std::size_t>(g - 1)].mean()});
    }
  }
  if (!out_path.empty()) {
    csv::Table t;
    t.header = {"eps", "group", "predicted_fpr", "simulated_fpr"};
    for (const auto& r : rows) {
      t.rows.push_back({fmt_double(r.eps), std::to_string(r.group), fmt_double(r.predicted),
                        fmt_double(r.simulated)});
    }
    csv::write_file(out_path, t);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Flat key=value config files (# starts a comment). Unknown keys are
// rejected so typos fail loudly.

inline ExperimentConfig parse_config_text(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  auto split_list = [](const std::string& value) {
    std::vector<double> xs;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) xs.push_back(std::stod(item));
    }
    return xs;
  };
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    if (key == "dataset_a") cfg.dataset_a_path = value;
    else if (key == "dataset_b") cfg.dataset_b_path = value;
    else if (key == "ground_truth") cfg.ground_truth_path = value;
    else if (key == "n") cfg.synthetic_n = std::stoi(value);
    else if (key == "overlap") cfg.overlap = std::stod(value);
    else if (key == "group_proportions") cfg.group_proportions = split_list(value);
    else if (key == "corruption_rate") cfg.corruption.corruption_rate = std::stod(value);
    else if (key == "corruption_rates") cfg.corruption.per_group_rates = split_list(value);
    else if (key == "ops_per_record") cfg.corruption.ops_per_record = std::stoi(value);
    else if (key == "n_l") cfg.n_l = std::stoi(value);
    else if (key == "k") cfg.k = std::stoi(value);
    else if (key == "q") cfg.q = std::stoi(value);
    else if (key == "n_b") cfg.n_b = std::stoi(value);
    else if (key == "scenarios") {
      cfg.scenarios.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) cfg.scenarios.push_back(scenario_from_name(item));
      }
    } else if (key == "eps_grid") cfg.budget_grid = split_list(value);
    else if (key == "flip") cfg.flip = std::stod(value);
    else if (key == "classifier") {
      if (value == "threshold") cfg.classifier = ClassifierKind::kThreshold;
      else if (value == "logistic") cfg.classifier = ClassifierKind::kLogistic;
      else throw std::invalid_argument("config: unknown classifier " + value);
    } else if (key == "threshold") cfg.threshold = std::stod(value);
    else if (key == "repetitions") cfg.repetitions = std::stoi(value);
    else if (key == "seed") cfg.master_seed = std::stoull(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "use_measured_fill") cfg.use_measured_fill = value == "1" || value == "true";
    else if (key == "base_rate_sample") cfg.base_rate_sample = std::stoull(value);
    else if (key == "method_a_grid_step") cfg.method_a_grid_step = std::stod(value);
    else if (key == "method_b_tol") cfg.method_b_tol = std::stod(value);
    else if (key == "training_sample") cfg.training_sample = std::stoull(value);
    else if (key == "attribution") {
      if (value == "left") cfg.attribution = GroupAttribution::kLeft;
      else if (value == "both_sides") cfg.attribution = GroupAttribution::kBothSides;
      else throw std::invalid_argument("config: unknown attribution " + value);
    } else {
      throw std::invalid_argument("config: unknown key " + key);
    }
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config_text(in);
}

}  // namespace fairlink

#endif  // FAIRLINK_EXPERIMENT_HPP
