// Benchmark CLI for the nondominated-set stores.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ndstore/bench.hpp"
#include "ndstore/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nondominated-set storage benchmark"};

  nds::ExperimentSpec spec;
  std::vector<std::string> policy_names;
  std::string structure = "tree";
  std::string out_path, export_path, plot_path, summary_path;

  app.add_option("--n", spec.n, "insertions per trial")->check(CLI::PositiveNumber);
  app.add_option("--mu", spec.mu, "dominance pressure")->check(CLI::NonNegativeNumber);
  app.add_option("--delta", spec.delta, "balance slack in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  app.add_option("--policy", policy_names, "rebalance policy a0..a4 (repeatable)");
  app.add_option("--structure", structure, "tree | list | both")
      ->check(CLI::IsMember({"tree", "list", "both"}));
  app.add_option("--trials", spec.trials, "trial count")->check(CLI::PositiveNumber);
  app.add_option("--seed", spec.seed, "base seed (trial i uses seed+i)");
  app.add_option("--time-limit-s", spec.time_limit_s, "per-trial insertion budget");
  app.add_flag("--prune", spec.subtree_prune, "enable ideal-point subtree pruning");
  app.add_option("--out", out_path, "per-trial results CSV");
  app.add_option("--summary", summary_path, "aggregate summary CSV");
  app.add_option("--export-set", export_path, "CSV of the final stored set");
  app.add_option("--plot", plot_path, "SVG of the final stored set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  spec.policies.clear();
  for (const auto& name : policy_names) {
    nds::RebalanceMode m;
    if (!nds::parse_policy(name, m)) {
      std::cerr << "unknown policy: " << name << "\n";
      return 1;
    }
    spec.policies.push_back(m);
  }
  if (spec.policies.empty()) spec.policies.push_back(nds::RebalanceMode::A0);
  spec.structure = structure == "tree"   ? nds::StructureChoice::Tree
                   : structure == "list" ? nds::StructureChoice::List
                                         : nds::StructureChoice::Both;

  try {
    std::vector<nds::ParetoElement> final_set;
    auto records = nds::run(spec, &final_set);

    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw nds::TrialFailure("cannot open " + out_path);
      nds::write_records_csv(records, f);
    }
    if (!summary_path.empty()) {
      std::ofstream f(summary_path);
      if (!f) throw nds::TrialFailure("cannot open " + summary_path);
      nds::write_summary_csv(nds::summarize(records), f);
    }
    if (!export_path.empty()) {
      std::ofstream f(export_path);
      if (!f) throw nds::TrialFailure("cannot open " + export_path);
      nds::export_csv(final_set, f);
    }
    if (!plot_path.empty()) {
      std::ofstream f(plot_path);
      if (!f) throw nds::TrialFailure("cannot open " + plot_path);
      nds::write_svg(final_set, f);
    }

    auto rows = nds::summarize(records);
    std::printf("%-6s %-6s %10s %8s %12s %8s %8s %10s\n", "struct", "policy",
                "n", "mu", "time_geo_ms", "d_min", "d_max", "nodes");
    for (const auto& r : rows)
      std::printf("%-6s %-6s %10lld %8g %12.4g %8d %8d %10.1f\n",
                  r.structure.c_str(), r.policy.c_str(),
                  static_cast<long long>(r.n), r.mu, r.time_geo_ms, r.depth_min,
                  r.depth_max, r.nodes_mean);
  } catch (const std::exception& e) {
    std::cerr << "trial failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
