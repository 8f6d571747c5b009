#pragma once
// Exact planar primitives: points, segments, boxes, polylines, and the
// orientation / intersection predicates everything else is built on.

#include <algorithm>
#include <cassert>
#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "cityvor/rat.hpp"

namespace cityvor {

struct Point {
  Rat x, y;

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
  // Lexicographic order (x first); used for canonical orderings throughout.
  bool operator<(const Point& o) const {
    int cx = cmp(x, o.x);
    if (cx != 0) return cx < 0;
    return y < o.y;
  }
};

inline Point pt(long x, long y) { return Point{Rat(x), Rat(y)}; }

inline Rat l1_distance(const Point& a, const Point& b) {
  return rat_abs(a.x - b.x) + rat_abs(a.y - b.y);
}

inline Rat linf_distance(const Point& a, const Point& b) {
  return rat_max(rat_abs(a.x - b.x), rat_abs(a.y - b.y));
}

// Straight segment with distinct endpoints unless noted otherwise.
struct Seg {
  Point a, b;

  bool degenerate() const { return a == b; }
  Point midpoint() const { return Point{(a.x + b.x) / 2, (a.y + b.y) / 2}; }
};

inline bool is_isothetic(const Seg& s) { return s.a.x == s.b.x || s.a.y == s.b.y; }
inline bool is_horizontal(const Seg& s) { return s.a.y == s.b.y && s.a.x != s.b.x; }
inline bool is_vertical(const Seg& s) { return s.a.x == s.b.x && s.a.y != s.b.y; }

// Axis-parallel segment (network edges, grid edges).
using IsoSegment = Seg;

// Open polygonal chain: >= 2 points, consecutive points distinct.
using PolyLine = std::vector<Point>;

struct Box {
  Rat x0, y0, x1, y1;  // x0 <= x1, y0 <= y1

  bool contains(const Point& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  bool strictly_contains(const Point& p) const {
    return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
  }
  Rat width() const { return x1 - x0; }
  Rat height() const { return y1 - y0; }
  std::vector<Point> corners() const {
    return {Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}};
  }
  std::vector<Seg> edges() const {
    auto c = corners();
    return {Seg{c[0], c[1]}, Seg{c[1], c[2]}, Seg{c[2], c[3]}, Seg{c[3], c[0]}};
  }
};

// Twice the signed area of triangle (o, a, b). Positive when a->b turns left.
inline Rat cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline int orient(const Point& o, const Point& a, const Point& b) {
  return sgn(cross(o, a, b));
}

inline bool collinear(const Point& a, const Point& b, const Point& c) {
  return orient(a, b, c) == 0;
}

// p lies on segment s, endpoints included.
inline bool on_segment(const Point& p, const Seg& s) {
  if (orient(s.a, s.b, p) != 0) return false;
  return p.x >= rat_min(s.a.x, s.b.x) && p.x <= rat_max(s.a.x, s.b.x) &&
         p.y >= rat_min(s.a.y, s.b.y) && p.y <= rat_max(s.a.y, s.b.y);
}

struct SegIntersection {
  enum Kind { None, At, Overlap } kind = None;
  Point p;       // Kind::At
  Point q0, q1;  // Kind::Overlap, q0 < q1
};

// Procedure: seg_intersect
// Exact segment intersection. Collinear overlaps of positive length are
// reported as Overlap; single shared points (endpoint touches included) as At.
inline SegIntersection seg_intersect(const Seg& s, const Seg& t) {
  SegIntersection out;
  Rat d1 = cross(t.a, t.b, s.a);
  Rat d2 = cross(t.a, t.b, s.b);
  Rat d3 = cross(s.a, s.b, t.a);
  Rat d4 = cross(s.a, s.b, t.b);

  if (sgn(d1) == 0 && sgn(d2) == 0 && sgn(d3) == 0 && sgn(d4) == 0) {
    // Collinear: order all four points along the common line.
    Point lo = std::min(s.a, s.b), hi = std::max(s.a, s.b);
    Point to = std::min(t.a, t.b), th = std::max(t.a, t.b);
    Point left = std::max(lo, to), right = std::min(hi, th);
    if (right < left) return out;
    if (left == right) {
      out.kind = SegIntersection::At;
      out.p = left;
    } else {
      out.kind = SegIntersection::Overlap;
      out.q0 = left;
      out.q1 = right;
    }
    return out;
  }

  int o1 = sgn(d1), o2 = sgn(d2), o3 = sgn(d3), o4 = sgn(d4);
  bool hit = ((o1 > 0) != (o2 > 0) || o1 == 0 || o2 == 0) &&
             ((o3 > 0) != (o4 > 0) || o3 == 0 || o4 == 0);
  // The generic predicate above is too permissive when only one endpoint is
  // collinear; fall back to explicit point-on-segment checks in those cases.
  if (o1 == 0 && on_segment(s.a, t)) { out.kind = SegIntersection::At; out.p = s.a; return out; }
  if (o2 == 0 && on_segment(s.b, t)) { out.kind = SegIntersection::At; out.p = s.b; return out; }
  if (o3 == 0 && on_segment(t.a, s)) { out.kind = SegIntersection::At; out.p = t.a; return out; }
  if (o4 == 0 && on_segment(t.b, s)) { out.kind = SegIntersection::At; out.p = t.b; return out; }
  if (!hit || o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) return out;

  // Proper crossing: s.a + u * (s.b - s.a), where u interpolates between the
  // signed offsets of s's endpoints from t's line.
  Rat denom = d1 - d2;
  assert(sgn(denom) != 0);
  Rat u = d1 / denom;
  out.kind = SegIntersection::At;
  out.p = Point{s.a.x + u * (s.b.x - s.a.x), s.a.y + u * (s.b.y - s.a.y)};
  return out;
}

// Procedure: clip_segment_to_box
// Exact Liang-Barsky style clip. Returns the clipped segment (possibly a
// single point, returned as a degenerate Seg) or nullopt when fully outside.
inline std::optional<Seg> clip_segment_to_box(const Seg& s, const Box& box) {
  Rat t0 = 0, t1 = 1;
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  auto clip1 = [&](const Rat& denom, const Rat& numer) {
    // Constraint: denom * t <= numer.
    if (sgn(denom) == 0) return sgn(numer) >= 0;
    Rat t = numer / denom;
    if (sgn(denom) > 0) {
      if (t < t1) t1 = t;
    } else {
      if (t > t0) t0 = t;
    }
    return true;
  };
  if (!clip1(-dx, s.a.x - box.x0)) return std::nullopt;
  if (!clip1(dx, box.x1 - s.a.x)) return std::nullopt;
  if (!clip1(-dy, s.a.y - box.y0)) return std::nullopt;
  if (!clip1(dy, box.y1 - s.a.y)) return std::nullopt;
  if (t0 > t1) return std::nullopt;
  Seg out{Point{s.a.x + t0 * dx, s.a.y + t0 * dy},
          Point{s.a.x + t1 * dx, s.a.y + t1 * dy}};
  return out;
}

// Procedure: clip_polyline
// Intersects an open chain with a closed box; returns the surviving pieces in
// traversal order, each a maximal connected run. Single-point touches are
// dropped (a chain piece needs positive length).
inline std::vector<PolyLine> clip_polyline(const PolyLine& chain, const Box& box) {
  std::vector<PolyLine> out;
  PolyLine cur;
  auto flush = [&]() {
    if (cur.size() >= 2) out.push_back(cur);
    cur.clear();
  };
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    Seg piece{chain[i], chain[i + 1]};
    if (piece.degenerate()) continue;
    auto clipped = clip_segment_to_box(piece, box);
    if (!clipped || clipped->degenerate()) {
      flush();
      continue;
    }
    if (!cur.empty() && cur.back() == clipped->a) {
      cur.push_back(clipped->b);
    } else {
      flush();
      cur = {clipped->a, clipped->b};
    }
  }
  flush();
  return out;
}

// Canonical key for an undirected segment (lexicographically smaller endpoint
// first); used when deduplicating arrangement edges.
inline std::pair<Point, Point> seg_key(const Seg& s) {
  return s.a < s.b ? std::make_pair(s.a, s.b) : std::make_pair(s.b, s.a);
}

}  // namespace cityvor
