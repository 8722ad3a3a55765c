#include "ndstore/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>
#include <ostream>

#include "ndstore/list.hpp"

namespace nds {

std::string to_string(RebalanceMode m) {
  switch (m) {
    case RebalanceMode::A0: return "a0";
    case RebalanceMode::A1: return "a1";
    case RebalanceMode::A2: return "a2";
    case RebalanceMode::A3: return "a3";
    case RebalanceMode::A4: return "a4";
  }
  return "?";
}

bool parse_policy(const std::string& s, RebalanceMode& out) {
  if (s.size() != 2 || (s[0] != 'a' && s[0] != 'A') || s[1] < '0' || s[1] > '4')
    return false;
  out = static_cast<RebalanceMode>(s[1] - '0');
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

// Inserts the generator stream into `store`, timing only the insertion calls.
// Returns false if the time limit was hit before the stream ended.
template <typename Store>
bool timed_run(InstanceGenerator& gen, Store& store, double time_limit_s,
               double& elapsed_ms, int64_t& processed) {
  elapsed_ms = 0.0;
  processed = 0;
  while (!gen.done()) {
    auto batch = gen.next_batch();
    auto t0 = Clock::now();
    for (const auto& e : batch) store.insert(e);
    auto t1 = Clock::now();
    elapsed_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    processed += static_cast<int64_t>(batch.size());
    if (time_limit_s > 0 && elapsed_ms > time_limit_s * 1000.0) return false;
  }
  return true;
}

}  // namespace

std::vector<ResultRecord> run(const ExperimentSpec& spec,
                              std::vector<ParetoElement>* final_set) {
  std::vector<ResultRecord> out;
  bool want_tree = spec.structure != StructureChoice::List;
  bool want_list = spec.structure != StructureChoice::Tree;

  for (int trial = 0; trial < spec.trials; ++trial) {
    uint64_t seed = spec.seed + static_cast<uint64_t>(trial);
    GeneratorConfig gcfg{spec.n, spec.mu, seed};

    std::vector<ParetoElement> list_set;
    bool have_list_set = false;
    if (want_list) {
      InstanceGenerator gen(gcfg);
      NdList list;
      ResultRecord r;
      r.structure = "list";
      r.policy = "-";
      r.n = spec.n;
      r.mu = spec.mu;
      r.seed = seed;
      bool done = timed_run(gen, list, spec.time_limit_s, r.elapsed_ms,
                            r.inserts_processed);
      r.final_nodes = list.item_count();
      out.push_back(r);
      if (done && want_tree) {
        list_set = list.nondominated_set();
        have_list_set = true;
      }
      if (done && final_set && !want_tree) *final_set = list.nondominated_set();
    }

    if (want_tree) {
      for (RebalanceMode mode : spec.policies) {
        InstanceGenerator gen(gcfg);
        NdTree tree(RebalancePolicy::make(mode, spec.delta), spec.subtree_prune);
        ResultRecord r;
        r.structure = "tree";
        r.policy = to_string(mode);
        r.n = spec.n;
        r.mu = spec.mu;
        r.seed = seed;
        bool done = timed_run(gen, tree, spec.time_limit_s, r.elapsed_ms,
                              r.inserts_processed);
        auto st = tree.stats();
        r.final_nodes = st.node_count;
        r.final_depth = st.depth;
        out.push_back(r);
        if (done) {
          auto tree_set = tree.nondominated_set();
          if (have_list_set && !sets_equal(tree_set, list_set, 1e-7)) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "tree/list mismatch: n=%lld mu=%g seed=%llu policy=%s "
                          "(%zu vs %zu elements)",
                          static_cast<long long>(spec.n), spec.mu,
                          static_cast<unsigned long long>(seed),
                          to_string(mode).c_str(), tree_set.size(), list_set.size());
            throw TrialFailure(msg);
          }
          if (final_set) *final_set = std::move(tree_set);
        }
      }
    }
  }
  return out;
}

double geometric_mean(const std::vector<double>& vals) {
  if (vals.empty()) return 0.0;
  double acc = 0.0;
  int n = 0;
  for (double v : vals)
    if (v > 0) {
      acc += std::log(v);
      ++n;
    }
  return n == 0 ? 0.0 : std::exp(acc / n);
}

std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records) {
  std::map<std::tuple<std::string, std::string, int64_t, double>,
           std::vector<const ResultRecord*>>
      groups;
  for (const auto& r : records)
    groups[{r.structure, r.policy, r.n, r.mu}].push_back(&r);

  std::vector<SummaryRow> rows;
  for (const auto& [key, recs] : groups) {
    SummaryRow row;
    row.structure = std::get<0>(key);
    row.policy = std::get<1>(key);
    row.n = std::get<2>(key);
    row.mu = std::get<3>(key);
    std::vector<double> times, depths;
    double nodes = 0.0;
    int completed = 0;
    row.depth_min = 0;
    row.depth_max = 0;
    for (const ResultRecord* r : recs) {
      ++row.trials;
      if (r->inserts_processed < r->n) {
        ++row.timeouts;  // timed-out trials are excluded from the aggregates
        continue;
      }
      ++completed;
      times.push_back(r->elapsed_ms);
      if (r->final_depth > 0) {
        depths.push_back(r->final_depth);
        if (row.depth_min == 0 || r->final_depth < row.depth_min)
          row.depth_min = r->final_depth;
        row.depth_max = std::max(row.depth_max, r->final_depth);
      }
      nodes += static_cast<double>(r->final_nodes);
    }
    row.time_geo_ms = geometric_mean(times);
    row.depth_geo = geometric_mean(depths);
    row.nodes_mean = completed ? nodes / completed : 0.0;
    rows.push_back(row);
  }
  return rows;
}

void write_records_csv(const std::vector<ResultRecord>& records, std::ostream& os) {
  os << "structure,policy,n,mu,seed,elapsed_ms,final_depth,final_nodes,"
        "inserts_processed\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%s,%s,%lld,%.12g,%llu,%.6g,%d,%lld,%lld\n",
                  r.structure.c_str(), r.policy.c_str(),
                  static_cast<long long>(r.n), r.mu,
                  static_cast<unsigned long long>(r.seed), r.elapsed_ms,
                  r.final_depth, static_cast<long long>(r.final_nodes),
                  static_cast<long long>(r.inserts_processed));
    os << buf;
  }
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& os) {
  os << "structure,policy,n,mu,trials,timeouts,time_geo_ms,depth_min,depth_geo,"
        "depth_max,nodes_mean\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%lld,%.12g,%d,%d,%.6g,%d,%.4g,%d,%.6g\n",
                  r.structure.c_str(), r.policy.c_str(),
                  static_cast<long long>(r.n), r.mu, r.trials, r.timeouts,
                  r.time_geo_ms, r.depth_min, r.depth_geo, r.depth_max,
                  r.nodes_mean);
    os << buf;
  }
}

}  // namespace nds
