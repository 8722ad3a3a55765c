#include "ndstore/list.hpp"

namespace nds {

InsertReport NdList::insert(const ParetoElement& elem) {
  ++insert_count_;
  InsertReport rep;

  // the incoming element is clipped first: a repetition of stored material
  // must vanish here without touching the stored items
  std::vector<ParetoElement> incoming{elem};
  for (const ParetoElement& s : items_) {
    // same early-outs as the dominated-interval computation: a stored item
    // entirely right of or above the element cannot clip any of its pieces
    if (elem.x2 < s.x1 - kTol || elem.y1 < s.y2 - kTol) continue;
    std::vector<ParetoElement> next;
    next.reserve(incoming.size() + 1);
    for (const ParetoElement& p : incoming) {
      ClipResult pc = clip_piece(elem, p, s);
      for (const auto& q : pc.pieces) next.push_back(q);
    }
    incoming.swap(next);
    if (incoming.empty()) break;
  }

  rep.pieces_added = static_cast<int>(incoming.size());
  rep.added_any = !incoming.empty();
  if (incoming.empty()) return rep;

  // stored items then lose whatever the element dominates. Clipping against
  // the pristine element (rather than the surviving pieces, whose boundaries
  // carry crossing noise) keeps the result independent of storage layout;
  // keep_grazing protects stored material the element merely touches, which
  // the surviving pieces could not have dominated.
  std::vector<ParetoElement> kept;
  kept.reserve(items_.size() + incoming.size());
  for (const ParetoElement& s : items_) {
    if (s.x2 < elem.x1 - kTol || s.y1 < elem.y2 - kTol) {
      kept.push_back(s);
      continue;
    }
    ClipResult cc = clip(s, elem, /*keep_grazing=*/true);
    for (const auto& q : cc.pieces) kept.push_back(q);
  }
  for (const auto& p : incoming) kept.push_back(p);
  items_.swap(kept);
  return rep;
}

std::vector<ParetoElement> NdList::nondominated_set() const {
  return canonicalize(items_);
}

}  // namespace nds
