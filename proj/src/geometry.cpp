#include "ndstore/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

namespace nds {

namespace {

bool close(double a, double b) { return std::fabs(a - b) <= kTol; }

bool same_point(double ax, double ay, double bx, double by) {
  return close(ax, bx) && close(ay, by);
}

// Staircase value of the region weakly dominated by d: defined for x >= d.x1.
double stair_y(const ParetoElement& d, double x) {
  return d.is_point() ? d.y1 : d.y_at(x);
}

}  // namespace

ParetoElement ParetoElement::point(double x, double y) {
  ParetoElement e;
  e.kind = Kind::Point;
  e.x1 = e.x2 = x;
  e.y1 = e.y2 = y;
  return e;
}

ParetoElement ParetoElement::segment(double x1, double y1, double x2, double y2) {
  assert(x1 < x2 && y1 > y2);
  ParetoElement e;
  e.kind = Kind::Segment;
  e.x1 = x1;
  e.y1 = y1;
  e.x2 = x2;
  e.y2 = y2;
  return e;
}

double ParetoElement::y_at(double x) const {
  if (is_point()) return y1;
  if (x <= x1) return y1;
  if (x >= x2) return y2;
  return y1 + (y2 - y1) * (x - x1) / (x2 - x1);
}

ParetoElement pre_trim(double xa, double ya, double xb, double yb) {
  if (xb < xa) {
    std::swap(xa, xb);
    std::swap(ya, yb);
  }
  if (xb - xa <= kTol) {
    // vertical (or coincident): the lower endpoint dominates the rest
    return ParetoElement::point(xa, std::min(ya, yb));
  }
  if (ya - yb <= kTol) {
    // horizontal or positive slope: the left endpoint has minimal x and,
    // for positive slope, also minimal y
    return ParetoElement::point(xa, std::min(ya, yb));
  }
  return ParetoElement::segment(xa, ya, xb, yb);
}

bool dominated_region_contains(const ParetoElement& d, const Point& q) {
  if (q.x < d.x1 - kTol) return false;
  double xe = std::clamp(q.x, d.x1, d.x2);
  return q.y >= stair_y(d, xe) - kTol;
}

RegionId region_of(const ParetoElement& base, const Point& q) {
  if (q.x < base.x1 - kTol) return q.y >= base.y1 - kTol ? RegionId::R1 : RegionId::R3;
  if (q.x < base.x2 - kTol)  // x strictly inside a segment's span
    return q.y >= base.y_at(q.x) - kTol ? RegionId::R2 : RegionId::R3;
  return q.y >= base.y2 - kTol ? RegionId::R2 : RegionId::R4;
}

namespace {

// The (closed, possibly empty) x-interval of segment t weakly dominated by d.
// h(x) = t(x) - stair_d(x) is concave piecewise linear, so {h >= 0} is one
// interval; endpoints are found exactly on the linear pieces.
std::optional<std::pair<double, double>> dominated_interval(
    const ParetoElement& t, const ParetoElement& d) {
  if (t.x2 < d.x1 - kTol) return std::nullopt;  // entirely left of the region
  if (t.y1 < d.y2 - kTol) return std::nullopt;  // entirely below it

  double lo = std::min(std::max(t.x1, d.x1), t.x2);
  double knots[3] = {lo, std::clamp(d.x2, lo, t.x2), t.x2};
  auto h = [&](double x) { return t.y_at(x) - stair_y(d, std::clamp(x, d.x1, d.x2)); };

  double a = 0.0, b = 0.0;
  bool found = false;
  for (int i = 0; i < 2; ++i) {
    double xa = knots[i], xb = knots[i + 1];
    double ha = h(xa), hb = h(xb);
    double pa, pb;  // dominated sub-interval of this piece
    if (ha >= -kTol && hb >= -kTol) {
      pa = xa;
      pb = xb;
    } else if (ha >= -kTol) {
      pa = xa;
      pb = std::clamp(xa + (xb - xa) * ha / (ha - hb), xa, xb);
    } else if (hb >= -kTol) {
      pa = std::clamp(xa + (xb - xa) * ha / (ha - hb), xa, xb);
      pb = xb;
    } else {
      continue;
    }
    if (!found) {
      a = pa;
      b = pb;
      found = true;
    } else {
      a = std::min(a, pa);
      b = std::max(b, pb);
    }
  }
  if (!found) return std::nullopt;
  return std::make_pair(a, b);
}

}  // namespace

double overlap_depth(const ParetoElement& t, const ParetoElement& d) {
  if (t.is_point()) {
    if (!dominated_region_contains(d, {t.x1, t.y1})) return 0.0;
    double vert = t.y1 - stair_y(d, std::clamp(t.x1, d.x1, d.x2));
    return std::max(0.0, std::min(vert, t.x1 - d.x1));
  }
  auto iv = dominated_interval(t, d);
  if (!iv) return 0.0;
  auto [a, b] = *iv;
  double best = 0.0;
  double xs[4] = {a, b, std::clamp(d.x2, a, b), 0.5 * (a + b)};
  for (double x : xs) {
    double vert = t.y_at(x) - stair_y(d, std::clamp(x, d.x1, d.x2));
    best = std::max(best, std::min(vert, x - d.x1));
  }
  return best;
}

ClipResult clip(const ParetoElement& target, const ParetoElement& dominator,
                bool keep_grazing) {
  ClipResult r;
  // tolerance-depth contact only: closure whiskers and shared boundaries.
  // Anything deeper is genuine domination and must be cut, or an incoming
  // piece that grazes below the target would be left without a region to
  // route to in the tree.
  if (keep_grazing && overlap_depth(target, dominator) <= kTol) {
    r.pieces.push_back(target);
    return r;
  }
  if (target.is_point()) {
    if (!dominated_region_contains(dominator, target.nw())) r.pieces.push_back(target);
    return r;
  }
  auto iv = dominated_interval(target, dominator);
  if (!iv) {
    r.pieces.push_back(target);
    return r;
  }
  auto [a, b] = *iv;
  bool covers_lo = a <= target.x1 + kTol;
  bool covers_hi = b >= target.x2 - kTol;
  if (covers_lo && covers_hi) return r;  // annihilated
  if (b - a <= kTol) {
    // tangential touch only: nothing of positive measure is dominated
    r.pieces.push_back(target);
    return r;
  }
  if (!covers_lo) {
    if (a - target.x1 > kTol)
      r.pieces.push_back(ParetoElement::segment(target.x1, target.y1, a, target.y_at(a)));
    else
      r.pieces.push_back(ParetoElement::point(target.x1, target.y1));
  }
  if (!covers_hi) {
    if (target.x2 - b > kTol)
      r.pieces.push_back(ParetoElement::segment(b, target.y_at(b), target.x2, target.y2));
    else
      r.pieces.push_back(ParetoElement::point(target.x2, target.y2));
  }
  r.was_split = r.pieces.size() == 2;
  return r;
}

ClipResult clip_piece(const ParetoElement& whole, const ParetoElement& piece,
                      const ParetoElement& dominator) {
  ClipResult r;
  if (piece.is_point()) {
    if (!dominated_region_contains(dominator, piece.nw())) r.pieces.push_back(piece);
    return r;
  }
  // the dominated interval is a pure function of (whole, dominator): every
  // sub-piece of whole sees bit-identical crossings regardless of what was
  // already cut away
  auto iv = dominated_interval(whole, dominator);
  if (!iv) {
    r.pieces.push_back(piece);
    return r;
  }
  double a = std::max(iv->first, piece.x1);
  double b = std::min(iv->second, piece.x2);
  if (b < a) {
    r.pieces.push_back(piece);
    return r;
  }
  bool covers_lo = a <= piece.x1 + kTol;
  bool covers_hi = b >= piece.x2 - kTol;
  if (covers_lo && covers_hi) return r;  // annihilated
  if (b - a <= kTol) {
    // tangential touch only: nothing of positive measure is dominated
    r.pieces.push_back(piece);
    return r;
  }
  if (!covers_lo)
    r.pieces.push_back(ParetoElement::segment(piece.x1, piece.y1, a, whole.y_at(a)));
  if (!covers_hi)
    r.pieces.push_back(ParetoElement::segment(b, whole.y_at(b), piece.x2, piece.y2));
  r.was_split = r.pieces.size() == 2;
  return r;
}

std::optional<ParetoElement> restrict_piece_to_region(const ParetoElement& whole,
                                                      const ParetoElement& piece,
                                                      const ParetoElement& base,
                                                      RegionId r) {
  if (r == RegionId::R1) {
    // x < base.x1 (open) and y >= base.y1 (closed)
    if (piece.is_point()) {
      if (piece.x1 < base.x1 - kTol && piece.y1 >= base.y1 - kTol) return piece;
      return std::nullopt;
    }
    if (piece.x1 >= base.x1 - kTol) return std::nullopt;
    if (piece.y1 < base.y1 - kTol) return std::nullopt;
    double hi = std::min(piece.x2, base.x1);
    if (piece.y2 < base.y1 - kTol) {
      // y-condition binds: cut where whole's line crosses y = base.y1
      double xy = whole.x1 +
                  (whole.x2 - whole.x1) * (whole.y1 - base.y1) / (whole.y1 - whole.y2);
      hi = std::min(hi, xy);
    }
    if (hi - piece.x1 <= kTol) return ParetoElement::point(piece.x1, piece.y1);
    return ParetoElement::segment(piece.x1, piece.y1, hi, whole.y_at(hi));
  }
  if (r == RegionId::R4) {
    // x >= base.x2 (closed) and y < base.y2 (open)
    if (piece.is_point()) {
      if (piece.x1 >= base.x2 - kTol && piece.y1 < base.y2 - kTol) return piece;
      return std::nullopt;
    }
    if (piece.y2 >= base.y2 - kTol) return std::nullopt;
    if (piece.x2 < base.x2 - kTol) return std::nullopt;
    double lo = std::max(piece.x1, base.x2);
    if (piece.y1 > base.y2 + kTol) {
      double xy = whole.x1 +
                  (whole.x2 - whole.x1) * (whole.y1 - base.y2) / (whole.y1 - whole.y2);
      lo = std::max(lo, xy);
    }
    if (piece.x2 - lo <= kTol) return ParetoElement::point(piece.x2, piece.y2);
    return ParetoElement::segment(lo, whole.y_at(lo), piece.x2, piece.y2);
  }
  throw std::invalid_argument("restrict_piece_to_region: only R1 and R4 are routable");
}

namespace {

enum class Cover { None, Partial, Full };

// How much of b lies inside the closed dominated region of a.
Cover coverage(const ParetoElement& b, const ParetoElement& a) {
  if (b.is_point())
    return dominated_region_contains(a, b.nw()) ? Cover::Full : Cover::None;
  auto iv = dominated_interval(b, a);
  if (!iv) return Cover::None;
  auto [lo, hi] = *iv;
  if (lo <= b.x1 + kTol && hi >= b.x2 - kTol) return Cover::Full;
  return Cover::Partial;
}

}  // namespace

DominanceRelation compare(const ParetoElement& a, const ParetoElement& b) {
  Cover b_in_a = coverage(b, a);
  Cover a_in_b = coverage(a, b);
  if (b_in_a == Cover::Full) return DominanceRelation::Dominates;
  if (a_in_b == Cover::Full) return DominanceRelation::DominatedBy;
  if (b_in_a == Cover::Partial) return DominanceRelation::PartialDominates;
  if (a_in_b == Cover::Partial) return DominanceRelation::PartiallyDominatedBy;
  return DominanceRelation::Incomparable;
}

std::optional<ParetoElement> restrict_to_region(const ParetoElement& t,
                                                const ParetoElement& base,
                                                RegionId r) {
  if (r == RegionId::R1) {
    // x < base.x1 (open) and y >= base.y1 (closed)
    if (t.is_point()) {
      if (t.x1 < base.x1 - kTol && t.y1 >= base.y1 - kTol) return t;
      return std::nullopt;
    }
    if (t.x1 >= base.x1 - kTol) return std::nullopt;
    if (t.y1 < base.y1 - kTol) return std::nullopt;
    double hi = std::min(t.x2, base.x1);
    if (t.y2 < base.y1 - kTol) {
      // y-condition binds: cut where the target line crosses y = base.y1
      double xy = t.x1 + (t.x2 - t.x1) * (t.y1 - base.y1) / (t.y1 - t.y2);
      hi = std::min(hi, xy);
    }
    if (hi - t.x1 <= kTol) return ParetoElement::point(t.x1, t.y1);
    return ParetoElement::segment(t.x1, t.y1, hi, t.y_at(hi));
  }
  if (r == RegionId::R4) {
    // x >= base.x2 (closed) and y < base.y2 (open)
    if (t.is_point()) {
      if (t.x1 >= base.x2 - kTol && t.y1 < base.y2 - kTol) return t;
      return std::nullopt;
    }
    if (t.y2 >= base.y2 - kTol) return std::nullopt;
    if (t.x2 < base.x2 - kTol) return std::nullopt;
    double lo = std::max(t.x1, base.x2);
    if (t.y1 > base.y2 + kTol) {
      double xy = t.x1 + (t.x2 - t.x1) * (t.y1 - base.y2) / (t.y1 - t.y2);
      lo = std::max(lo, xy);
    }
    if (t.x2 - lo <= kTol) return ParetoElement::point(t.x2, t.y2);
    return ParetoElement::segment(lo, t.y_at(lo), t.x2, t.y2);
  }
  throw std::invalid_argument("restrict_to_region: only R1 and R4 are routable");
}

namespace {

bool materially_equal(const ClipResult& c, const ParetoElement& orig) {
  if (c.pieces.size() != 1) return false;
  const ParetoElement& p = c.pieces[0];
  return p.kind == orig.kind && close(p.x1, orig.x1) && close(p.y1, orig.y1) &&
         close(p.x2, orig.x2) && close(p.y2, orig.y2);
}

}  // namespace

std::vector<ParetoElement> canonicalize(std::span<const ParetoElement> elems) {
  std::vector<ParetoElement> cur(elems.begin(), elems.end());
  for (int round = 0; round < 64; ++round) {
    // `changed` must cover every stage: the loop exits only at a fixpoint of
    // the whole pipeline, so the result is idempotent and does not depend on
    // how many rounds some unrelated part of the input needed
    bool changed = false;
    std::vector<ParetoElement> v;
    v.reserve(cur.size());
    for (const auto& e : cur) {
      if (e.kind == Kind::Segment && (e.x2 - e.x1 <= kTol || e.y1 - e.y2 <= kTol)) {
        ParetoElement t = pre_trim(e.x1, e.y1, e.x2, e.y2);  // collapse degenerates
        changed = changed || t.kind != e.kind || t.x1 != e.x1 || t.y1 != e.y1 ||
                  t.x2 != e.x2 || t.y2 != e.y2;
        v.push_back(t);
      } else {
        v.push_back(e);
      }
    }
    std::sort(v.begin(), v.end(), [](const ParetoElement& a, const ParetoElement& b) {
      if (!close(a.x1, b.x1)) return a.x1 < b.x1;
      if (!close(a.y1, b.y1)) return a.y1 > b.y1;
      return a.is_point() && !b.is_point();  // point sorts before coincident segment
    });

    // drop points within the artifact band of a neighbouring element. A point
    // surviving at sub-band clearance below the chain (or grazing above it)
    // is a byproduct of tolerance races during insertion, not a feature: the
    // survival decision sits on a kTol boundary, so two stores holding
    // sliver-different copies of the same segment can disagree about it
    auto near_band = [](const ParetoElement& p, const ParetoElement& e) {
      if (e.is_point())
        return std::fabs(p.x1 - e.x1) <= kArtifactBand &&
               std::fabs(p.y1 - e.y1) <= kArtifactBand;
      double d = std::max(std::fabs(p.x1 - e.x1), std::fabs(p.y1 - e.y1));
      d = std::min(d, std::max(std::fabs(p.x1 - e.x2), std::fabs(p.y1 - e.y2)));
      if (p.x1 >= e.x1 && p.x1 <= e.x2)
        d = std::min(d, std::fabs(e.y_at(p.x1) - p.y1));
      if (p.y1 <= e.y1 && p.y1 >= e.y2) {
        double m = (e.y2 - e.y1) / (e.x2 - e.x1);
        if (m != 0.0)
          d = std::min(d, std::fabs(e.x1 + (p.y1 - e.y1) / m - p.x1));
      }
      return d <= kArtifactBand;
    };
    std::vector<ParetoElement> kept;
    kept.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      const auto& e = v[i];
      if (e.is_point()) {
        bool dup = false;
        if (i > 0 && near_band(e, v[i - 1])) dup = true;
        if (!dup && i + 1 < v.size() && near_band(e, v[i + 1])) dup = true;
        if (!dup && !kept.empty() && near_band(e, kept.back())) dup = true;
        if (dup) {
          changed = true;
          continue;
        }
      }
      kept.push_back(e);
    }

    // merge runs of collinear segments sharing endpoints. Every interior
    // vertex of a merged run must lie within tolerance of the final chord:
    // testing only neighbouring pairs lets tolerance-scale kinks accumulate
    // into a chord that drifts arbitrarily far from its constituents
    std::vector<ParetoElement> merged;
    size_t i = 0;
    while (i < kept.size()) {
      if (kept[i].is_point()) {
        merged.push_back(kept[i++]);
        continue;
      }
      size_t j = i;  // run [i, j]: consecutive x-contiguous segments
      while (j + 1 < kept.size() && !kept[j + 1].is_point() &&
             close(kept[j].x2, kept[j + 1].x1)) {
        // chord i..j+1 must stay within kTol of every interior vertex. The
        // junction itself only needs artifact-band continuity: a spliced
        // sliver boundary can carry a y-jump slightly over kTol even though
        // both upper vertices sit squarely on the chord
        double cx1 = kept[i].x1, cy1 = kept[i].y1;
        double cx2 = kept[j + 1].x2, cy2 = kept[j + 1].y2;
        double m = (cy2 - cy1) / (cx2 - cx1);
        double scale = std::max(1.0, -m);
        if (std::fabs(kept[j + 1].y1 - kept[j].y2) > kArtifactBand * scale) break;
        bool ok = true;
        for (size_t k = i; k <= j; ++k) {
          double dy = std::fabs(kept[k].y2 - (cy1 + m * (kept[k].x2 - cx1)));
          if (dy > kTol * scale) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        ++j;
      }
      ParetoElement run = kept[i];
      if (j > i) {
        run.x2 = kept[j].x2;
        run.y2 = kept[j].y2;
        changed = true;
      }
      merged.push_back(run);
      i = j + 1;
    }

    // adjacent elements must be mutually nondominated. Tolerance-scale
    // overlaps are resolved by truncating the dominated element at the other
    // element's own endpoint: the overlapping lines are nearly parallel, so
    // cutting at their computed crossing would place the new breakpoint at an
    // ill-conditioned, essentially arbitrary position. Anything deeper than
    // the artifact band is structural corruption.
    std::vector<ParetoElement> out;
    out.reserve(merged.size());
    for (const auto& e : merged) {
      if (out.empty()) {
        out.push_back(e);
        continue;
      }
      const ParetoElement a = out.back();
      double de = overlap_depth(e, a);
      double da = overlap_depth(a, e);
      if (std::max(de, da) > kArtifactBand)
        throw DominatedPairError("canonicalize: dominated pair " + to_string(a) +
                                 " / " + to_string(e));
      if (a.is_point() || e.is_point()) {
        // a point's boundary is flat, so clipping against it is stable
        ClipResult cb = clip(e, a);
        if (!materially_equal(cb, e)) {
          changed = true;
          for (const auto& p : cb.pieces) out.push_back(p);
          continue;
        }
        ClipResult ca = clip(a, e);
        if (!materially_equal(ca, a)) {
          changed = true;
          out.pop_back();
          for (const auto& p : ca.pieces) out.push_back(p);
        }
        out.push_back(e);
        continue;
      }
      if (de <= kTol && da <= kTol) {
        // contact no deeper than the coordinate tolerance: endpoint whiskers
        // pass through, but segments sharing more than a tolerance of x-span
        // are near-coincident duplicates and the later one restarts after the
        // earlier
        double ovl = std::min(a.x2, e.x2) - e.x1;
        if (ovl <= kTol) {
          out.push_back(e);
          continue;
        }
        changed = true;
        if (e.x2 - a.x2 > kTol)
          out.push_back(ParetoElement::segment(a.x2, e.y_at(a.x2), e.x2, e.y2));
        continue;
      }
      changed = true;
      if (de >= da) {
        // e loses its head under a's tail; restart it at a's right end
        if (e.is_point() || e.x2 - a.x2 <= kTol) continue;  // absorbed
        ParetoElement e2 = a.x2 > e.x1 + kTol
                               ? ParetoElement::segment(a.x2, e.y_at(a.x2), e.x2, e.y2)
                               : e;
        if (overlap_depth(e2, a) > kTol) {
          // still overlapping beyond a's span (a's flat shadow): fall back to
          // a genuine clip for this rare shape
          ClipResult cb = clip(e2, a);
          for (const auto& p : cb.pieces) out.push_back(p);
        } else {
          out.push_back(e2);
        }
        continue;
      }
      // a loses the part of its tail that e's span covers
      out.pop_back();
      if (!a.is_point() && e.x1 - a.x1 > kTol)
        out.push_back(ParetoElement::segment(a.x1, a.y1, e.x1, a.y_at(e.x1)));
      if (!a.is_point() && a.x2 - e.x2 > kTol) {
        ParetoElement a2 = ParetoElement::segment(e.x2, a.y_at(e.x2), a.x2, a.y2);
        if (overlap_depth(a2, e) > kTol) {
          ClipResult ca = clip(a2, e);
          for (const auto& p : ca.pieces) out.push_back(p);
        } else {
          out.push_back(a2);
        }
      }
      out.push_back(e);
    }
    if (!changed) return out;
    cur = std::move(out);
  }
  throw DominatedPairError("canonicalize: overlaps did not stabilize");
}

bool sets_equal(std::span<const ParetoElement> a, std::span<const ParetoElement> b,
                double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind) return false;
    if (std::fabs(a[i].x1 - b[i].x1) > tol || std::fabs(a[i].y1 - b[i].y1) > tol ||
        std::fabs(a[i].x2 - b[i].x2) > tol || std::fabs(a[i].y2 - b[i].y2) > tol)
      return false;
  }
  return true;
}

std::string to_string(const ParetoElement& e) {
  char buf[128];
  if (e.is_point())
    std::snprintf(buf, sizeof buf, "P(%.12g, %.12g)", e.x1, e.y1);
  else
    std::snprintf(buf, sizeof buf, "S(%.12g, %.12g)-(%.12g, %.12g)", e.x1, e.y1,
                  e.x2, e.y2);
  return buf;
}

}  // namespace nds
