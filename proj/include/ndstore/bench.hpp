// Experiment driver shared by the CLI and the acceptance suite.
#ifndef NDSTORE_BENCH_HPP
#define NDSTORE_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndstore/generator.hpp"
#include "ndstore/tree.hpp"

namespace nds {

enum class StructureChoice { Tree, List, Both };

struct ExperimentSpec {
  int64_t n = 10000;
  double mu = 0.0;
  double delta = 0.3;
  std::vector<RebalanceMode> policies = {RebalanceMode::A0};
  StructureChoice structure = StructureChoice::Tree;
  int trials = 1;
  uint64_t seed = 0;
  double time_limit_s = 0.0;  // 0 = unlimited
  bool subtree_prune = false;
};

struct ResultRecord {
  std::string structure;  // "tree" or "list"
  std::string policy;     // "a0".."a4", or "-" for list
  int64_t n = 0;
  double mu = 0.0;
  uint64_t seed = 0;
  double elapsed_ms = 0.0;
  int final_depth = 0;  // 0 for the list
  int64_t final_nodes = 0;
  int64_t inserts_processed = 0;  // < n marks a timed-out trial
};

struct SummaryRow {
  std::string structure;
  std::string policy;
  int64_t n = 0;
  double mu = 0.0;
  int trials = 0;
  int timeouts = 0;
  double time_geo_ms = 0.0;
  int depth_min = 0;
  double depth_geo = 0.0;
  int depth_max = 0;
  double nodes_mean = 0.0;
};

struct TrialFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string to_string(RebalanceMode m);
bool parse_policy(const std::string& s, RebalanceMode& out);

// Runs every (structure, policy, trial) combination. Each trial uses the
// derived seed spec.seed + trial index; tree and list see the same stream.
// When both structures run, their canonical sets are compared per trial and a
// mismatch throws TrialFailure. When `final_set` is non-null it receives the
// canonical set of the last completed trial.
std::vector<ResultRecord> run(const ExperimentSpec& spec,
                              std::vector<ParetoElement>* final_set = nullptr);

std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records);

void write_records_csv(const std::vector<ResultRecord>& records, std::ostream& os);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& os);

double geometric_mean(const std::vector<double>& positive_values);

}  // namespace nds

#endif
