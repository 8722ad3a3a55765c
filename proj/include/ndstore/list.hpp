// Pairwise-comparison baseline: same storage semantics as NdTree, O(n) per
// insertion. Exists to be slow and obviously correct.
#ifndef NDSTORE_LIST_HPP
#define NDSTORE_LIST_HPP

#include <vector>

#include "ndstore/geometry.hpp"
#include "ndstore/tree.hpp"  // InsertReport

namespace nds {

class NdList {
 public:
  InsertReport insert(const ParetoElement& elem);
  std::vector<ParetoElement> nondominated_set() const;
  int64_t item_count() const { return static_cast<int64_t>(items_.size()); }
  const std::vector<ParetoElement>& raw_items() const { return items_; }
  int64_t insert_count() const { return insert_count_; }

 private:
  std::vector<ParetoElement> items_;
  int64_t insert_count_ = 0;
};

}  // namespace nds

#endif
