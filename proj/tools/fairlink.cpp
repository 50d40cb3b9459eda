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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairlink/analytics.hpp"
#include "fairlink/blocking.hpp"
#include "fairlink/encoding.hpp"
#include "fairlink/experiment.hpp"
#include "fairlink/linkage.hpp"
#include "fairlink/optimize.hpp"
#include "fairlink/records.hpp"

namespace {

using namespace fairlink;

ExperimentConfig config_from(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : load_config(path);
}

void print_report(const LinkageReport& report, int groups) {
  auto line = [](const std::string& name, const ConfusionCounts& c) {
    std::cout << "  " << name << ": tp=" << c.tp << " fp=" << c.fp << " tn=" << c.tn
              << " fn=" << c.fn << " precision=" << fmt_double(c.precision())
              << " recall=" << fmt_double(c.recall()) << " f*=" << fmt_double(c.f_star())
              << " fpr=" << fmt_double(c.fpr()) << " fnr=" << fmt_double(c.fnr()) << "\n";
  };
  for (int g = 1; g <= groups; ++g) {
    line("group " + std::to_string(g), report.per_group[static_cast<std::size_t>(g - 1)]);
  }
  line("overall", report.overall);
  std::cout << "  fairness_loss=" << fmt_double(report.fairness_loss)
            << " fairness=" << fmt_double(report.fairness) << " cost=" << report.cost_total
            << "\n";
}

void write_scenario_fragment(const std::string& path, const ScenarioConfig& sc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write fragment: " + path);
  out << "scenario = " << scenario_name(sc.scenario) << "\n";
  out << "eps_overall = " << fmt_double(sc.overall_eps) << "\n";
  out << "eps_list = " << detail::join_doubles(sc.per_group_eps, ',') << "\n";
  out << "flip_list = " << detail::join_doubles(sc.per_group_flip, ',') << "\n";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> xs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) xs.push_back(std::stod(item));
  }
  return xs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairlink: fairness- and cost-aware differentially private record linkage"};
  app.require_subcommand(1);

  std::string config_path, out_path, scenario_str = "baseline2", classifier_str;
  std::uint64_t seed = 1;
  double eps = 1.0, flip = 0.5, threshold = 0.8;

  // gen-data ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen-data", "generate a synthetic two-party dataset");
  int gen_n = 500;
  double gen_overlap = 0.5;
  std::string gen_props = "0.5,0.5", gen_rates;
  double gen_rate = 0.0;
  int gen_ops = 1;
  gen->add_option("--n", gen_n, "records per party");
  gen->add_option("--overlap", gen_overlap, "shared-entity fraction");
  gen->add_option("--proportions", gen_props, "per-group proportions, comma separated");
  gen->add_option("--corruption-rate", gen_rate, "fraction of party-B records to corrupt");
  gen->add_option("--corruption-rates", gen_rates, "per-group corruption rates");
  gen->add_option("--ops-per-record", gen_ops, "edit operations per corrupted record");
  gen->add_option("--seed", seed, "master seed");
  gen->add_option("--out", out_path, "output prefix")->required();

  // encode ------------------------------------------------------------------
  auto* encode = app.add_subcommand("encode", "encode a dataset CSV into Bloom filters");
  std::string enc_in;
  int enc_nl = 300, enc_k = 30, enc_q = 2;
  encode->add_option("--in", enc_in, "dataset CSV")->required();
  encode->add_option("--n-l", enc_nl, "filter length in bits");
  encode->add_option("--k", enc_k, "hash functions per q-gram");
  encode->add_option("--q", enc_q, "q-gram length");
  encode->add_option("--seed", seed, "shared hash key");
  encode->add_option("--out", out_path, "filter file")->required();

  // block -------------------------------------------------------------------
  auto* block = app.add_subcommand("block", "bin filters and apply feature-level DP");
  std::string block_in, block_fragment, block_eps_list, block_flip_list;
  int block_nb = 30, block_groups = 2;
  std::uint64_t block_hash_seed = 1;
  block->add_option("--in", block_in, "filter file")->required();
  block->add_option("--n-b", block_nb, "label length in bits");
  block->add_option("--groups", block_groups, "protected group count");
  block->add_option("--scenario", scenario_str, "baseline1|baseline2|method_a|method_b");
  block->add_option("--eps", eps, "overall privacy budget");
  block->add_option("--flip", flip, "uniform flip probability");
  block->add_option("--eps-list", block_eps_list, "per-group budgets (method scenarios)");
  block->add_option("--flip-list", block_flip_list, "per-group flips (method scenarios)");
  block->add_option("--fragment", block_fragment, "scenario fragment from optimize-a/b");
  block->add_option("--hash-seed", block_hash_seed, "shared hash key used at encode time");
  block->add_option("--seed", seed, "perturbation seed");
  block->add_option("--out", out_path, "binned file (sidecar written as <out>.private)")
      ->required();

  // link --------------------------------------------------------------------
  auto* link = app.add_subcommand("link", "classify candidate pairs and evaluate");
  std::string link_a, link_b, link_gt;
  int link_groups = 2;
  link->add_option("--a", link_a, "party A binned file")->required();
  link->add_option("--b", link_b, "party B binned file")->required();
  link->add_option("--gt", link_gt, "ground-truth CSV")->required();
  link->add_option("--groups", link_groups, "protected group count");
  link->add_option("--classifier", classifier_str, "threshold|logistic")->default_val("threshold");
  link->add_option("--threshold", threshold, "dice threshold");
  link->add_option("--seed", seed, "training-sample seed (logistic)");
  link->add_option("--out", out_path, "report CSV");

  // experiment ----------------------------------------------------------------
  auto* experiment = app.add_subcommand("experiment", "run the scenario sweep");
  bool exp_has_seed = false;
  experiment->add_option("--config", config_path, "experiment config file");
  experiment->add_option("--seed", seed, "master seed override")
      ->each([&](const std::string&) { exp_has_seed = true; });
  experiment->add_option("--out", out_path, "output directory override");

  // oracle-fp ---------------------------------------------------------------
  auto* oracle_fp = app.add_subcommand("oracle-fp", "false-positive probability curve");
  int fp_trials = 10000, fp_nl = 300;
  double fp_fill = 0.5, fp_step = 0.02, fp_max = 0.5;
  oracle_fp->add_option("--trials", fp_trials, "Monte-Carlo trials per grid point");
  oracle_fp->add_option("--n-l", fp_nl, "filter length");
  oracle_fp->add_option("--fill-p", fp_fill, "per-bit fill probability");
  oracle_fp->add_option("--threshold", threshold, "dice threshold");
  oracle_fp->add_option("--step", fp_step, "flip grid step");
  oracle_fp->add_option("--max-flip", fp_max, "flip grid end");
  oracle_fp->add_option("--seed", seed, "sampling seed");
  oracle_fp->add_option("--out", out_path, "output CSV")->required();

  // oracle-fpr ----------------------------------------------------------------
  auto* oracle_fpr = app.add_subcommand("oracle-fpr", "FPR-vs-eps curve, theory vs simulation");
  int fpr_reps = 50;
  std::string fpr_grid = "0.1,1,10";
  oracle_fpr->add_option("--config", config_path, "experiment config file");
  oracle_fpr->add_option("--reps", fpr_reps, "end-to-end repetitions per budget");
  oracle_fpr->add_option("--eps-grid", fpr_grid, "overall budgets, comma separated");
  oracle_fpr->add_option("--seed", seed, "master seed override");
  oracle_fpr->add_option("--out", out_path, "output CSV")->required();

  // optimize-a / optimize-b ---------------------------------------------------
  auto* opt_a = app.add_subcommand("optimize-a", "fairness-constrained flip search");
  auto* opt_b = app.add_subcommand("optimize-b", "cost-constrained budget allocation");
  int opt_rep = 0;
  double opt_grid_step = 0.01, opt_tol = 1e-6;
  for (auto* cmd : {opt_a, opt_b}) {
    cmd->add_option("--config", config_path, "experiment config describing the instance");
    cmd->add_option("--eps", eps, "overall privacy budget")->required();
    cmd->add_option("--rep", opt_rep, "repetition index of the instance");
    cmd->add_option("--seed", seed, "master seed override");
    cmd->add_option("--out", out_path, "scenario fragment file");
  }
  opt_a->add_option("--grid-step", opt_grid_step, "flip grid step");
  opt_b->add_option("--flip", flip, "uniform flip probability");
  opt_b->add_option("--tol", opt_tol, "loss tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      auto [a, b, gt] = generate_synthetic(gen_n, gen_overlap, parse_list(gen_props), seed);
      if (gen_rate > 0.0 || !gen_rates.empty()) {
        CorruptionConfig cc;
        cc.corruption_rate = gen_rate;
        if (!gen_rates.empty()) cc.per_group_rates = parse_list(gen_rates);
        cc.ops_per_record = gen_ops;
        b = corrupt_dataset(b, cc, seed + 1);
      }
      save_dataset(out_path + "_a.csv", a);
      save_dataset(out_path + "_b.csv", b);
      save_ground_truth(out_path + "_gt.csv", gt);
      std::cout << "wrote " << out_path << "_{a,b,gt}.csv (" << gt.matches.size()
                << " true matches)\n";
    } else if (encode->parsed()) {
      EncodingConfig cfg;
      cfg.n_l = enc_nl;
      cfg.k = enc_k;
      cfg.q = enc_q;
      cfg.hash_seed = seed;
      const Dataset ds = load_dataset(enc_in, Schema::default_person());
      const auto filters = encode_dataset(ds, cfg);
      save_filters(out_path, filters, cfg);
      std::cout << "encoded " << filters.size() << " records (mean fill "
                << fmt_double(measure_fill_rate(filters)) << ")\n";
    } else if (block->parsed()) {
      int n_l = 0;
      const auto filters = load_filters(block_in, &n_l);
      EncodingConfig cfg;
      cfg.n_l = n_l;
      cfg.hash_seed = block_hash_seed;
      cfg.label_positions = default_label_positions(n_l, block_nb, cfg.hash_seed);
      BinnedDataset binned = block_dataset(filters, cfg);

      ScenarioConfig sc;
      sc.threshold = threshold;
      sc.seed = seed;
      if (!block_fragment.empty()) {
        std::ifstream frag(block_fragment);
        if (!frag) throw std::runtime_error("cannot open fragment: " + block_fragment);
        std::string line;
        while (std::getline(frag, line)) {
          const auto eq = line.find('=');
          if (eq == std::string::npos) continue;
          const std::string key = line.substr(0, line.find(' '));
          const std::string value = line.substr(eq + 2);
          if (key == "scenario") sc.scenario = scenario_from_name(value);
          else if (key == "eps_overall") sc.overall_eps = std::stod(value);
          else if (key == "eps_list") sc.per_group_eps = parse_list(value);
          else if (key == "flip_list") sc.per_group_flip = parse_list(value);
        }
      } else {
        sc.scenario = scenario_from_name(scenario_str);
        sc.overall_eps = eps;
        if (sc.scenario != Scenario::kBaseline1) {
          sc.per_group_eps = block_eps_list.empty()
                                 ? std::vector<double>(block_groups, eps * block_groups)
                                 : parse_list(block_eps_list);
          sc.per_group_flip = block_flip_list.empty()
                                  ? std::vector<double>(block_groups, flip)
                                  : parse_list(block_flip_list);
        }
      }
      PrivacyBudget budget;
      if (sc.scenario != Scenario::kBaseline1) budget = PrivacyBudget(sc.per_group_eps, 1.0);
      const BinnedDataset perturbed = apply_feature_level_dp(binned, sc, budget);
      save_binned(out_path, out_path + ".private", perturbed);
      std::cout << "wrote " << perturbed.total_records() << " rows over "
                << perturbed.bins.size() << " bins ("
                << perturbed.total_records() - binned.total_records() << " dummies)\n";
    } else if (link->parsed()) {
      const BinnedDataset a = load_binned(link_a, link_a + ".private");
      const BinnedDataset b = load_binned(link_b, link_b + ".private");
      const GroundTruth gt = load_ground_truth(link_gt);
      const auto pairs = candidate_pairs(a, b);
      std::vector<bool> predictions;
      if (classifier_str == "logistic") {
        const auto sample = build_training_sample(pairs, gt, 400, seed);
        predictions = classify_logistic(pairs, train_logistic(sample));
      } else {
        predictions = classify_threshold(pairs, threshold);
      }
      const LinkageReport report = evaluate(pairs, predictions, gt, a, b, link_groups);
      print_report(report, link_groups);
      if (!out_path.empty()) {
        csv::Table t;
        t.header = {"group", "tp", "fp", "tn", "fn", "precision", "recall", "f_star",
                    "fpr", "fnr", "fairness_loss", "fairness", "cost"};
        auto row = [&](const std::string& name, const ConfusionCounts& c, double cost) {
          t.rows.push_back({name, std::to_string(c.tp), std::to_string(c.fp),
                            std::to_string(c.tn), std::to_string(c.fn),
                            fmt_double(c.precision()), fmt_double(c.recall()),
                            fmt_double(c.f_star()), fmt_double(c.fpr()), fmt_double(c.fnr()),
                            fmt_double(report.fairness_loss), fmt_double(report.fairness),
                            fmt_double(cost)});
        };
        for (int g = 1; g <= link_groups; ++g) {
          row("g" + std::to_string(g), report.per_group[static_cast<std::size_t>(g - 1)],
              report.per_group_cost[static_cast<std::size_t>(g - 1)]);
        }
        row("overall", report.overall, static_cast<double>(report.cost_total));
        csv::write_file(out_path, t);
      }
    } else if (experiment->parsed()) {
      ExperimentConfig cfg = config_from(config_path);
      if (exp_has_seed) cfg.master_seed = seed;
      if (!out_path.empty()) cfg.out_dir = out_path;
      const bool ok = run_experiment(cfg);
      std::cout << (ok ? "sweep complete" : "sweep finished with failed runs") << "; reports in "
                << cfg.out_dir << "\n";
      return ok ? 0 : 1;
    } else if (oracle_fp->parsed()) {
      AnalyticsParams params;
      params.n_l = fp_nl;
      params.threshold = threshold;
      params.fill_p = fp_fill;
      std::vector<double> grid;
      for (double f = 0.0; f <= fp_max + 1e-12; f += fp_step) grid.push_back(f);
      const auto rows = oracle_fp_curve(params, grid, fp_trials, seed, out_path);
      double max_gap = 0.0;
      for (const auto& r : rows) max_gap = std::max(max_gap, std::fabs(r[1] - r[2]));
      std::cout << "wrote " << rows.size() << " rows; max |predicted-simulated| = "
                << fmt_double(max_gap) << "\n";
    } else if (oracle_fpr->parsed()) {
      ExperimentConfig cfg = config_from(config_path);
      if (oracle_fpr->count("--seed")) cfg.master_seed = seed;
      const auto rows = oracle_fpr_curve(cfg, parse_list(fpr_grid), fpr_reps, out_path);
      std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
    } else if (opt_a->parsed() || opt_b->parsed()) {
      ExperimentConfig cfg = config_from(config_path);
      CLI::App* cmd = opt_a->parsed() ? opt_a : opt_b;
      if (cmd->count("--seed")) cfg.master_seed = seed;
      const PreparedInstance inst = prepare_instance(cfg, opt_rep);
      ScenarioConfig sc;
      sc.overall_eps = eps;
      sc.threshold = cfg.threshold;
      if (opt_a->parsed()) {
        sc.scenario = Scenario::kMethodA;
        const std::vector<double> uniform_eps(static_cast<std::size_t>(inst.group_count),
                                              eps * inst.group_count);
        const auto result = method_a_search(uniform_eps, inst.base, inst.params, opt_grid_step);
        sc.per_group_eps = uniform_eps;
        sc.per_group_flip = result.per_group_values;
        std::cout << "flip* = " << detail::join_doubles(result.per_group_values, ',')
                  << "  model loss = " << fmt_double(result.achieved_loss) << " ("
                  << result.evaluations << " evaluations)\n";
      } else {
        sc.scenario = Scenario::kMethodB;
        const std::vector<double> uniform_flip(static_cast<std::size_t>(inst.group_count), flip);
        const auto result = method_b_allocate(eps, uniform_flip, inst.base, inst.params, opt_tol);
        sc.per_group_eps = result.per_group_values;
        sc.per_group_flip = uniform_flip;
        std::cout << "eps* = " << detail::join_doubles(result.per_group_values, ',')
                  << "  model loss = " << fmt_double(result.achieved_loss)
                  << "  composed eps = " << fmt_double(compose_budget(result.per_group_values))
                  << "\n";
      }
      if (!out_path.empty()) write_scenario_fragment(out_path, sc);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
