// Self-balancing binary tree storing the nondominated subset of the inserted
// points and segments. Left subtree of a node lies in its R1, right subtree
// in its R4 (Property 1).
#ifndef NDSTORE_TREE_HPP
#define NDSTORE_TREE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ndstore/geometry.hpp"

namespace nds {

using NodeId = int32_t;
inline constexpr NodeId kNullNode = -1;

enum class RebalanceMode { A0, A1, A2, A3, A4 };

struct RebalancePolicy {
  RebalanceMode mode = RebalanceMode::A0;
  double delta = 0.3;               // balance slack, in (0, 1)
  int64_t initial_trigger = 100;    // first periodic rebalance (A2/A4)
  double growth_ratio = 1.01;       // next trigger = ratio * count at last pass

  static RebalancePolicy make(RebalanceMode mode, double delta = 0.3);
};

struct InsertReport {
  bool added_any = false;
  int pieces_added = 0;  // nodes created for the inserted element's residuals
};

struct NodeNotInTreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NdTree {
 public:
  explicit NdTree(RebalancePolicy policy = {}, bool subtree_prune = false);

  InsertReport insert(const ParetoElement& elem);

  // Detaches the element held by `id` (Algorithm-2 replacement chain).
  void remove_node(NodeId id);

  // Restores the balance criterion everywhere (repeated Algorithm-3 passes).
  void rebalance_full();

  std::vector<ParetoElement> nondominated_set() const;

  struct Stats {
    int64_t node_count = 0;
    int depth = 0;
  };
  Stats stats() const;

  // Invariant violations (empty when healthy): Property 1, size bookkeeping,
  // pairwise nondominance, ideal-point aggregates when pruning is enabled.
  std::vector<std::string> validate() const;

  bool empty() const { return root_ == kNullNode; }
  int64_t node_count() const { return node_count_; }
  int64_t insert_count() const { return insert_count_; }
  NodeId root() const { return root_; }

  // True iff max(l.size, r.size) <= floor(size / (2 - delta)) at every node
  // with size > 2.
  bool balance_criterion_holds() const;

  // structural read access (tests, experiments)
  const ParetoElement& element_at(NodeId id) const;
  NodeId left_of(NodeId id) const;
  NodeId right_of(NodeId id) const;
  int64_t size_of(NodeId id) const;

  // removal instrumentation: when enabled, records for every removal the
  // number of nodes visited by the replacement walk and the tree depth at
  // that moment
  void enable_removal_instrumentation(bool on) { instrument_removals_ = on; }
  int64_t removal_count() const { return removal_count_; }
  int64_t removal_visits_over_depth() const { return removal_visits_over_depth_; }
  int max_removal_visits() const { return max_removal_visits_; }

 private:
  struct Node {
    ParetoElement elem;
    NodeId parent = kNullNode;
    NodeId left = kNullNode;
    NodeId right = kNullNode;
    int64_t size = 1;
    // ideal-point aggregates, maintained only when pruning is enabled:
    // ideal_left = (nw_x, elem.y1), ideal_right = (elem.x2, se_y)
    double nw_x = 0.0;
    double se_y = 0.0;
    bool alive = false;
    // balance criterion holds at this node and everywhere below; lets the
    // rebalance pass skip subtrees it would not touch anyway
    bool crit_all = true;
  };

  struct Slot {  // addresses a child position; parent == kNullNode => root
    NodeId parent = kNullNode;
    bool left = false;
  };

  NodeId slot_get(const Slot& s) const;
  void slot_set(const Slot& s, NodeId n);
  NodeId alloc(const ParetoElement& e);
  void free_node(NodeId n);
  void free_subtree(NodeId n);
  int64_t size_or_zero(NodeId n) const { return n == kNullNode ? 0 : nodes_[n].size; }
  void refresh(NodeId n);      // recompute size/aggregates from children
  void refresh_up(NodeId n);   // refresh n and all its ancestors
  NodeId leftmost(NodeId n, int* visits) const;
  NodeId rightmost(NodeId n, int* visits) const;
  int depth_of(NodeId n) const;
  void remove_node_impl(NodeId id);
  bool criterion_ok(NodeId n) const;
  void rebalance_pass(NodeId n);
  void fix_node(NodeId n);          // apply the criterion repair at one node
  void rotate_left(NodeId n);       // RebalanceLeft1
  void rotate_right(NodeId n);      // RebalanceRight1
  void move_left(NodeId n);         // RebalanceLeft2 (one node right -> left... see impl)
  void move_right(NodeId n);
  Slot slot_of(NodeId n) const;
  void maybe_periodic_rebalance();
  void collect_inorder(NodeId n, std::vector<ParetoElement>& out) const;

  std::vector<Node> nodes_;
  std::vector<NodeId> free_list_;
  NodeId root_ = kNullNode;
  int64_t node_count_ = 0;
  int64_t insert_count_ = 0;
  RebalancePolicy policy_;
  bool prune_ = false;
  int64_t last_rebalance_count_ = 0;
  bool periodic_armed_ = false;  // true once the initial trigger has fired

  bool instrument_removals_ = false;
  int64_t removal_count_ = 0;
  int64_t removal_visits_over_depth_ = 0;
  int max_removal_visits_ = 0;
};

}  // namespace nds

#endif
