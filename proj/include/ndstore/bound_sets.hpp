// Bound sets for biobjective branch-and-bound fathoming: local nadir points
// of a nondominated set and the separability test against a lower-bound curve.
#ifndef NDSTORE_BOUND_SETS_HPP
#define NDSTORE_BOUND_SETS_HPP

#include <span>
#include <vector>

#include "ndstore/geometry.hpp"

namespace nds {

struct NotNondominatedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundSet {
  std::vector<Point> nadir_points;           // gaps between adjacent elements
  std::vector<ParetoElement> nadir_segments; // every stored segment, verbatim
};

// Convex, strictly decreasing piecewise-linear curve (a slice problem's lower
// bound). Defined on [x_min, x_max] only.
class LowerBoundCurve {
 public:
  static LowerBoundCurve from_points(std::vector<Point> breakpoints);
  double y_at(double x) const;                     // x clamped to the domain
  double x_min() const { return pts_.front().x; }
  double x_max() const { return pts_.back().x; }
  const std::vector<Point>& breakpoints() const { return pts_; }

 private:
  std::vector<Point> pts_;
};

// The bound set ϑ of a nondominated set: one local nadir point per adjacent
// pair whose closures do not share an endpoint, plus all segments. Throws
// NotNondominatedError if the input is not pairwise nondominated.
BoundSet theta(std::span<const ParetoElement> nondominated);

// True iff no point of the curve weakly dominates any point of the bound set
// (exact piecewise-linear test).
bool is_separable(const LowerBoundCurve& lower, const BoundSet& upper);

// Sampled reference implementation of is_separable.
bool brute_force_separable(const LowerBoundCurve& lower, const BoundSet& upper,
                           int samples = 512);

}  // namespace nds

#endif
