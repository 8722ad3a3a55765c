// Biobjective objective-space primitives: points and negative-slope segments,
// dominance regions, clipping. Minimization in both coordinates throughout.
#ifndef NDSTORE_GEOMETRY_HPP
#define NDSTORE_GEOMETRY_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nds {

inline constexpr double kTol = 1e-9;  // absolute coordinate tolerance

// Overlaps no deeper than this are rounding artifacts of earlier clips (a
// closed residual endpoint grazing a neighbour's boundary), not genuine
// domination.
inline constexpr double kArtifactBand = 16 * kTol;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Kind { Point, Segment };

// A point or a closed segment with strictly negative slope, stored with its
// north-west endpoint first (x1 < x2, y1 > y2). For points x1 == x2, y1 == y2.
struct ParetoElement {
  Kind kind = Kind::Point;
  double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;

  static ParetoElement point(double x, double y);
  static ParetoElement segment(double x1, double y1, double x2, double y2);

  bool is_point() const { return kind == Kind::Point; }
  Point nw() const { return {x1, y1}; }
  Point se() const { return {x2, y2}; }

  // Line value at x (segments only; x is clamped to [x1, x2]).
  double y_at(double x) const;
};

// Normalizes an arbitrary endpoint pair into a valid element: swaps so x1 <= x2,
// collapses horizontal segments to the left endpoint, vertical ones to the
// bottom endpoint and positive-slope ones to their south-west endpoint.
ParetoElement pre_trim(double xa, double ya, double xb, double yb);

enum class RegionId { R1, R2, R3, R4 };

enum class DominanceRelation {
  Dominates,
  DominatedBy,
  PartialDominates,
  PartiallyDominatedBy,
  Incomparable,
};

struct ClipResult {
  // 0 pieces: target annihilated; 1: reduced (or untouched); 2: split.
  std::vector<ParetoElement> pieces;
  bool was_split = false;
};

struct DominatedPairError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// True iff q lies in the closed region weakly dominated by `dominator` (R2).
bool dominated_region_contains(const ParetoElement& dominator, const Point& q);

// The unique region of point q in base's partition R1..R4. Each region owns
// its lower and left boundaries; the base element itself lies in its own R2.
RegionId region_of(const ParetoElement& base, const Point& q);

DominanceRelation compare(const ParetoElement& a, const ParetoElement& b);

// Removes from `target` the portion weakly dominated by `dominator` and
// returns the closure of what remains (0..2 maximal pieces). With
// keep_grazing set, a target whose overlap never exceeds kTol in depth is
// returned whole; used when trimming stored items so that material merely
// touching the incoming element's boundary is not lost.
ClipResult clip(const ParetoElement& target, const ParetoElement& dominator,
                bool keep_grazing = false);

// Maximum depth at which the material of `target` penetrates the region
// weakly dominated by `dominator` (0 when disjoint), measured as the smaller
// of the vertical and horizontal slack to the region boundary.
double overlap_depth(const ParetoElement& target, const ParetoElement& dominator);

// The closure of target ∩ region r of base; absent when the intersection is
// empty. Only R1 and R4 are meaningful routing targets.
std::optional<ParetoElement> restrict_to_region(const ParetoElement& target,
                                                const ParetoElement& base,
                                                RegionId r);

// Variants of clip and restrict_to_region for `piece`, a sub-range of the
// original element `whole` (every piece endpoint lies on whole). Crossings
// are computed from whole, never from the piece's own truncated endpoints:
// recomputing a slope from truncated endpoints injects rounding noise that a
// nearly parallel crossing amplifies by 1/Δslope, so the same element cut
// down in two different orders would yield visibly different boundaries.
ClipResult clip_piece(const ParetoElement& whole, const ParetoElement& piece,
                      const ParetoElement& dominator);
std::optional<ParetoElement> restrict_piece_to_region(const ParetoElement& whole,
                                                      const ParetoElement& piece,
                                                      const ParetoElement& base,
                                                      RegionId r);

// Deterministic canonical form of a pairwise nondominated collection: sorted
// north-west to south-east, adjacent collinear segments merged, points
// coincident with a segment endpoint dropped. Throws DominatedPairError if
// the input contains a materially dominated pair.
std::vector<ParetoElement> canonicalize(std::span<const ParetoElement> elems);

// Element-wise equality of two canonical sets within an absolute tolerance.
bool sets_equal(std::span<const ParetoElement> a,
                std::span<const ParetoElement> b, double tol);

std::string to_string(const ParetoElement& e);

}  // namespace nds

#endif
