#include "ndstore/bound_sets.hpp"

#include <algorithm>
#include <cmath>

namespace nds {

LowerBoundCurve LowerBoundCurve::from_points(std::vector<Point> breakpoints) {
  if (breakpoints.empty())
    throw std::invalid_argument("LowerBoundCurve: no breakpoints");
  std::sort(breakpoints.begin(), breakpoints.end(),
            [](const Point& a, const Point& b) { return a.x < b.x; });
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double dx = breakpoints[i + 1].x - breakpoints[i].x;
    double dy = breakpoints[i + 1].y - breakpoints[i].y;
    if (dx <= kTol || dy >= -kTol)
      throw std::invalid_argument("LowerBoundCurve: not strictly decreasing");
    double slope = dy / dx;
    if (slope < prev_slope - kTol)
      throw std::invalid_argument("LowerBoundCurve: not convex");
    prev_slope = slope;
  }
  LowerBoundCurve c;
  c.pts_ = std::move(breakpoints);
  return c;
}

double LowerBoundCurve::y_at(double x) const {
  if (x <= pts_.front().x) return pts_.front().y;
  if (x >= pts_.back().x) return pts_.back().y;
  auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                             [](double v, const Point& p) { return v < p.x; });
  const Point& b = *it;
  const Point& a = *(it - 1);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

BoundSet theta(std::span<const ParetoElement> nondominated) {
  std::vector<ParetoElement> v;
  try {
    v = canonicalize(nondominated);
  } catch (const DominatedPairError& e) {
    throw NotNondominatedError(e.what());
  }
  BoundSet bs;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    const ParetoElement& a = v[i];
    const ParetoElement& b = v[i + 1];
    bool shared = std::fabs(a.x2 - b.x1) <= kTol && std::fabs(a.y2 - b.y1) <= kTol;
    if (!shared) bs.nadir_points.push_back({b.x1, a.y2});
  }
  for (const auto& e : v)
    if (!e.is_point()) bs.nadir_segments.push_back(e);
  return bs;
}

namespace {

// Does some curve point weakly dominate q?
bool curve_dominates_point(const LowerBoundCurve& c, const Point& q, double tol) {
  if (c.x_min() > q.x + tol) return false;  // no curve point with x <= q.x
  return c.y_at(std::min(q.x, c.x_max())) <= q.y + tol;
}

// Does some curve point weakly dominate some point of segment u? The gap
// u(x) - curve(min(x, x_max)) is concave piecewise linear in x, so its
// maximum over the feasible span sits at a knot.
bool curve_dominates_segment(const LowerBoundCurve& c, const ParetoElement& u,
                             double tol) {
  double lo = std::max(u.x1, c.x_min());
  double hi = u.x2;
  if (lo > hi + tol) return false;
  lo = std::min(lo, hi);
  auto gap = [&](double x) {
    return u.y_at(x) - c.y_at(std::min(x, c.x_max()));
  };
  double best = std::max(gap(lo), gap(hi));
  for (const Point& p : c.breakpoints())
    if (p.x > lo && p.x < hi) best = std::max(best, gap(p.x));
  if (c.x_max() > lo && c.x_max() < hi) best = std::max(best, gap(c.x_max()));
  return best >= -tol;
}

}  // namespace

bool is_separable(const LowerBoundCurve& lower, const BoundSet& upper) {
  for (const Point& u : upper.nadir_points)
    if (curve_dominates_point(lower, u, kTol)) return false;
  for (const ParetoElement& u : upper.nadir_segments)
    if (u.is_point() ? curve_dominates_point(lower, u.nw(), kTol)
                     : curve_dominates_segment(lower, u, kTol))
      return false;
  return true;
}

bool brute_force_separable(const LowerBoundCurve& lower, const BoundSet& upper,
                           int samples) {
  std::vector<Point> curve_pts;
  curve_pts.reserve(static_cast<size_t>(samples) + lower.breakpoints().size());
  for (int i = 0; i < samples; ++i) {
    double x = lower.x_min() +
               (lower.x_max() - lower.x_min()) * i / std::max(1, samples - 1);
    curve_pts.push_back({x, lower.y_at(x)});
  }
  for (const Point& p : lower.breakpoints()) curve_pts.push_back(p);

  std::vector<Point> upper_pts(upper.nadir_points.begin(), upper.nadir_points.end());
  for (const ParetoElement& u : upper.nadir_segments) {
    if (u.is_point()) {
      upper_pts.push_back(u.nw());
      continue;
    }
    for (int i = 0; i < samples; ++i) {
      double x = u.x1 + (u.x2 - u.x1) * i / std::max(1, samples - 1);
      upper_pts.push_back({x, u.y_at(x)});
    }
  }
  for (const Point& l : curve_pts)
    for (const Point& q : upper_pts)
      if (l.x <= q.x + kTol && l.y <= q.y + kTol) return false;
  return true;
}

}  // namespace nds
