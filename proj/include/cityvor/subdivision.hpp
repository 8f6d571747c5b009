#pragma once
// Planar subdivisions of a bounding box: exact arrangement construction from
// a soup of segments, face extraction with holes, point location, interior
// point selection, overlay, and relabel/dissolve rebuilding.
//
// Representation is a half-edge structure. Faces lie to the LEFT of their
// half-edges, so bounded faces have counterclockwise outer cycles and
// clockwise hole cycles. Exactly one face is unbounded (outside the box).

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "cityvor/geometry.hpp"

namespace cityvor {

struct FaceLabel {
  std::vector<int> ids;  // sorted, duplicate-free

  bool operator==(const FaceLabel& o) const { return ids == o.ids; }
  bool operator!=(const FaceLabel& o) const { return ids != o.ids; }
  bool operator<(const FaceLabel& o) const { return ids < o.ids; }
};

inline FaceLabel label_of(int id) { return FaceLabel{{id}}; }

struct PlanarSubdivision {
  struct Half {
    int origin = -1;  // vertex index
    int twin = -1;
    int next = -1;
    int face = -1;
  };
  struct Face {
    FaceLabel label;
    FaceLabel label2;            // secondary label (overlay results)
    std::vector<int> cycle;      // one starting half-edge per boundary cycle;
                                 // cycle[0] is the outer cycle of bounded faces
    bool unbounded = false;
  };

  Box box{};
  std::vector<Point> vert;
  std::vector<Half> half;  // halves 2e and 2e+1 are twins
  std::vector<Face> face;

  int edge_count() const { return static_cast<int>(half.size()) / 2; }
  const Point& src(int h) const { return vert[half[h].origin]; }
  const Point& dst(int h) const { return vert[half[half[h].twin].origin]; }
  Seg edge_seg(int h) const { return Seg{src(h), dst(h)}; }

  int unbounded_face() const {
    for (size_t f = 0; f < face.size(); ++f)
      if (face[f].unbounded) return static_cast<int>(f);
    return -1;
  }

  std::vector<Seg> edge_segments() const {
    std::vector<Seg> out;
    out.reserve(edge_count());
    for (int h = 0; h < static_cast<int>(half.size()); h += 2) out.push_back(edge_seg(h));
    return out;
  }

  // Walks a boundary cycle, returning the half-edge sequence.
  std::vector<int> cycle_halves(int h0) const {
    std::vector<int> out;
    int h = h0;
    do {
      out.push_back(h);
      h = half[h].next;
    } while (h != h0);
    return out;
  }

  std::vector<std::vector<Point>> face_cycles(int f) const {
    std::vector<std::vector<Point>> out;
    for (int h0 : face[f].cycle) {
      std::vector<Point> ring;
      for (int h : cycle_halves(h0)) ring.push_back(src(h));
      out.push_back(std::move(ring));
    }
    return out;
  }

  // Twice the signed area of one cycle walk.
  Rat cycle_area2(int h0) const {
    Rat area = 0;
    for (int h : cycle_halves(h0)) {
      const Point& u = src(h);
      const Point& v = dst(h);
      area += u.x * v.y - v.x * u.y;
    }
    return area;
  }

  Rat face_area2(int f) const {
    Rat area = 0;
    for (int h0 : face[f].cycle) area += cycle_area2(h0);
    return area;
  }

  // Ray-cast parity of p against every boundary edge of face f.
  // p must not lie on the boundary.
  bool parity_inside(const Point& p, int f) const {
    bool inside = false;
    for (int h0 : face[f].cycle) {
      for (int h : cycle_halves(h0)) {
        const Point& u = src(h);
        const Point& v = dst(h);
        bool below_u = u.y <= p.y, below_v = v.y <= p.y;
        if (below_u == below_v) continue;  // skips horizontal edges too
        Rat x_at = u.x + (p.y - u.y) * (v.x - u.x) / (v.y - u.y);
        if (x_at > p.x) inside = !inside;
      }
    }
    return inside;
  }

  struct Location {
    int face = -1;    // set when strictly inside a face (or the unbounded face)
    int vertex = -1;  // set when exactly on a vertex
    int edge = -1;    // even half-edge index when on an edge interior
    bool boundary() const { return vertex >= 0 || edge >= 0; }
  };

  Location locate(const Point& p) const {
    Location loc;
    for (size_t v = 0; v < vert.size(); ++v) {
      if (vert[v] == p) {
        loc.vertex = static_cast<int>(v);
        return loc;
      }
    }
    for (int h = 0; h < static_cast<int>(half.size()); h += 2) {
      if (on_segment(p, edge_seg(h))) {
        loc.edge = h;
        return loc;
      }
    }
    for (size_t f = 0; f < face.size(); ++f) {
      if (face[f].unbounded) continue;
      if (parity_inside(p, static_cast<int>(f))) {
        loc.face = static_cast<int>(f);
        return loc;
      }
    }
    loc.face = unbounded_face();
    return loc;
  }

  // Face containing p. Boundary points resolve to the incident face with the
  // lexicographically smallest (label, label2) among incident bounded faces.
  int face_at(const Point& p) const {
    Location loc = locate(p);
    if (loc.face >= 0) return loc.face;
    std::vector<int> cand;
    if (loc.edge >= 0) {
      cand = {half[loc.edge].face, half[loc.edge + 1].face};
    } else {
      for (int h = 0; h < static_cast<int>(half.size()); ++h)
        if (half[h].origin == loc.vertex) cand.push_back(half[h].face);
    }
    int best = -1;
    for (int f : cand) {
      if (face[f].unbounded) continue;
      if (best < 0 ||
          std::make_pair(face[f].label, face[f].label2) <
              std::make_pair(face[best].label, face[best].label2))
        best = f;
    }
    return best >= 0 ? best : cand.front();
  }

  // Procedure: interior_point
  // A point strictly inside bounded face f. Scans the horizontal line halfway
  // between the two lowest distinct boundary heights; within that open strip
  // the boundary has no vertices, so the face's cross-section is stable and
  // nonempty there.
  Point interior_point(int f) const {
    assert(!face[f].unbounded);
    std::vector<Rat> ys;
    for (int h0 : face[f].cycle)
      for (int h : cycle_halves(h0)) ys.push_back(src(h).y);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    assert(ys.size() >= 2);
    Rat ystar = (ys[0] + ys[1]) / 2;

    std::vector<Rat> xs;
    for (int h0 : face[f].cycle) {
      for (int h : cycle_halves(h0)) {
        const Point& u = src(h);
        const Point& v = dst(h);
        bool below_u = u.y <= ystar, below_v = v.y <= ystar;
        if (below_u == below_v) continue;
        xs.push_back(u.x + (ystar - u.y) * (v.x - u.x) / (v.y - u.y));
      }
    }
    std::sort(xs.begin(), xs.end());
    assert(xs.size() >= 2 && xs.size() % 2 == 0);
    return Point{(xs[0] + xs[1]) / 2, ystar};
  }

  // Generalized Euler check: V - E + F - C == 1 where C counts connected
  // components of the edge graph (the unbounded face is included in F).
  bool euler_ok() const {
    if (vert.empty()) return false;
    std::vector<int> parent(vert.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (int h = 0; h < static_cast<int>(half.size()); h += 2)
      parent[find(half[h].origin)] = find(half[h + 1].origin);
    std::set<int> roots;
    for (size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
    long v = static_cast<long>(vert.size());
    long e = edge_count();
    long fc = static_cast<long>(face.size());
    long c = static_cast<long>(roots.size());
    return v - e + fc - c == 1;
  }
};

namespace detail {

// Angular order of direction vectors, counterclockwise starting from east.
inline int direction_class(const Rat& dx, const Rat& dy) {
  int sx = sgn(dx), sy = sgn(dy);
  if (sx > 0 && sy == 0) return 0;
  if (sx > 0 && sy > 0) return 1;
  if (sx == 0 && sy > 0) return 2;
  if (sx < 0 && sy > 0) return 3;
  if (sx < 0 && sy == 0) return 4;
  if (sx < 0 && sy < 0) return 5;
  if (sx == 0 && sy < 0) return 6;
  return 7;
}

struct DirLess {
  bool operator()(const std::pair<Rat, Rat>& a, const std::pair<Rat, Rat>& b) const {
    int ca = direction_class(a.first, a.second);
    int cb = direction_class(b.first, b.second);
    if (ca != cb) return ca < cb;
    // Same open quadrant: counterclockwise comparison via cross product.
    return sgn(a.first * b.second - a.second * b.first) > 0;
  }
};

// Parity of p against one cycle's edges, skipping when p lies on the cycle.
inline bool point_strictly_in_ring(const Point& p, const std::vector<Seg>& ring,
                                   bool* on_boundary) {
  *on_boundary = false;
  bool inside = false;
  for (const Seg& s : ring) {
    if (on_segment(p, s)) {
      *on_boundary = true;
      return false;
    }
    bool below_u = s.a.y <= p.y, below_v = s.b.y <= p.y;
    if (below_u == below_v) continue;
    Rat x_at = s.a.x + (p.y - s.a.y) * (s.b.x - s.a.x) / (s.b.y - s.a.y);
    if (x_at > p.x) inside = !inside;
  }
  return inside;
}

}  // namespace detail

// Procedure: build_arrangement
// Planarizes a segment soup (clipped to the box, box edges always included),
// trims dangling chains, and extracts the face structure. Faces are returned
// unlabeled.
inline PlanarSubdivision build_arrangement(const std::vector<Seg>& input, const Box& box) {
  // -- collect, clip, drop degenerate --
  std::vector<Seg> segs;
  for (const Seg& s : box.edges()) segs.push_back(s);
  for (const Seg& s : input) {
    if (s.degenerate()) continue;
    auto c = clip_segment_to_box(s, box);
    if (c && !c->degenerate()) segs.push_back(*c);
  }

  size_t n = segs.size();
  std::vector<std::vector<Point>> cuts(n);
  for (size_t i = 0; i < n; ++i) cuts[i] = {segs[i].a, segs[i].b};

  // Conservative floating-point boxes to skip far-apart pairs.
  struct DBox {
    double x0, y0, x1, y1;
  };
  std::vector<DBox> db(n);
  for (size_t i = 0; i < n; ++i) {
    double ax = segs[i].a.x.get_d(), ay = segs[i].a.y.get_d();
    double bx = segs[i].b.x.get_d(), by = segs[i].b.y.get_d();
    const double m = 1e-6 * (1.0 + std::max(std::abs(ax) + std::abs(ay),
                                            std::abs(bx) + std::abs(by)));
    db[i] = {std::min(ax, bx) - m, std::min(ay, by) - m,
             std::max(ax, bx) + m, std::max(ay, by) + m};
  }

  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (db[i].x1 < db[j].x0 || db[j].x1 < db[i].x0 || db[i].y1 < db[j].y0 ||
          db[j].y1 < db[i].y0)
        continue;
      SegIntersection hit = seg_intersect(segs[i], segs[j]);
      if (hit.kind == SegIntersection::At) {
        cuts[i].push_back(hit.p);
        cuts[j].push_back(hit.p);
      } else if (hit.kind == SegIntersection::Overlap) {
        cuts[i].push_back(hit.q0);
        cuts[i].push_back(hit.q1);
        cuts[j].push_back(hit.q0);
        cuts[j].push_back(hit.q1);
      }
    }
  }

  // -- emit atomic pieces, dedupe --
  std::set<std::pair<Point, Point>> pieces;
  for (size_t i = 0; i < n; ++i) {
    Rat dx = segs[i].b.x - segs[i].a.x, dy = segs[i].b.y - segs[i].a.y;
    auto along = [&](const Point& p) -> Rat {
      return (p.x - segs[i].a.x) * dx + (p.y - segs[i].a.y) * dy;
    };
    std::sort(cuts[i].begin(), cuts[i].end(),
              [&](const Point& p, const Point& q) { return along(p) < along(q); });
    cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
    for (size_t t = 0; t + 1 < cuts[i].size(); ++t)
      pieces.insert(seg_key(Seg{cuts[i][t], cuts[i][t + 1]}));
  }

  // -- trim dangling chains (they bound no region) --
  for (;;) {
    std::map<Point, int> deg;
    for (const auto& pc : pieces) {
      ++deg[pc.first];
      ++deg[pc.second];
    }
    std::vector<std::pair<Point, Point>> drop;
    for (const auto& pc : pieces)
      if (deg[pc.first] == 1 || deg[pc.second] == 1) drop.push_back(pc);
    if (drop.empty()) break;
    for (const auto& pc : drop) pieces.erase(pc);
  }

  // -- vertices and half-edges --
  PlanarSubdivision sub;
  sub.box = box;
  std::map<Point, int> vid;
  for (const auto& pc : pieces) {
    vid.emplace(pc.first, 0);
    vid.emplace(pc.second, 0);
  }
  for (auto& kv : vid) {
    kv.second = static_cast<int>(sub.vert.size());
    sub.vert.push_back(kv.first);
  }

  sub.half.reserve(pieces.size() * 2);
  std::vector<std::vector<int>> outgoing(sub.vert.size());
  for (const auto& pc : pieces) {
    int u = vid[pc.first], v = vid[pc.second];
    int h = static_cast<int>(sub.half.size());
    sub.half.push_back({u, h + 1, -1, -1});
    sub.half.push_back({v, h, -1, -1});
    outgoing[u].push_back(h);
    outgoing[v].push_back(h + 1);
  }

  for (size_t v = 0; v < outgoing.size(); ++v) {
    auto dir = [&](int h) -> std::pair<Rat, Rat> {
      const Point& a = sub.vert[v];
      const Point& b = sub.dst(h);
      return {Rat(b.x - a.x), Rat(b.y - a.y)};
    };
    std::sort(outgoing[v].begin(), outgoing[v].end(),
              [&](int h1, int h2) { return detail::DirLess()(dir(h1), dir(h2)); });
    // next(h) for h ending at v: the clockwise neighbor of twin(h) around v.
    int m = static_cast<int>(outgoing[v].size());
    for (int k = 0; k < m; ++k) {
      int out_h = outgoing[v][k];
      int in_h = sub.half[out_h].twin;
      int prev = outgoing[v][(k + m - 1) % m];
      sub.half[in_h].next = prev;
    }
  }

  // -- boundary cycles --
  std::vector<int> cyc_of(sub.half.size(), -1);
  std::vector<int> cyc_start;
  for (int h = 0; h < static_cast<int>(sub.half.size()); ++h) {
    if (cyc_of[h] >= 0) continue;
    int id = static_cast<int>(cyc_start.size());
    cyc_start.push_back(h);
    int w = h;
    do {
      cyc_of[w] = id;
      w = sub.half[w].next;
    } while (w != h);
  }

  int ncyc = static_cast<int>(cyc_start.size());
  std::vector<Rat> area2(ncyc, Rat(0));
  for (int c = 0; c < ncyc; ++c) {
    int h = cyc_start[c];
    int w = h;
    do {
      const Point& a = sub.src(w);
      const Point& b = sub.dst(w);
      area2[c] += a.x * b.y - b.x * a.y;
      w = sub.half[w].next;
    } while (w != h);
  }

  // CCW cycles found a bounded face each; other cycles attach as holes to the
  // smallest CCW cycle strictly containing a point of theirs.
  std::vector<int> face_of_cycle(ncyc, -1);
  std::vector<std::vector<Seg>> rings(ncyc);
  for (int c = 0; c < ncyc; ++c) {
    int h = cyc_start[c];
    int w = h;
    do {
      rings[c].push_back(sub.edge_seg(w));
      w = sub.half[w].next;
    } while (w != h);
  }

  for (int c = 0; c < ncyc; ++c) {
    if (sgn(area2[c]) > 0) {
      face_of_cycle[c] = static_cast<int>(sub.face.size());
      PlanarSubdivision::Face f;
      f.cycle.push_back(cyc_start[c]);
      sub.face.push_back(f);
    }
    assert(sgn(area2[c]) != 0);
  }

  int unbounded = static_cast<int>(sub.face.size());
  {
    PlanarSubdivision::Face f;
    f.unbounded = true;
    sub.face.push_back(f);
  }

  for (int c = 0; c < ncyc; ++c) {
    if (sgn(area2[c]) > 0) continue;
    Point probe = rings[c].front().midpoint();
    int best = -1;
    for (int d = 0; d < ncyc; ++d) {
      if (sgn(area2[d]) <= 0) continue;
      bool on_boundary = false;
      if (!detail::point_strictly_in_ring(probe, rings[d], &on_boundary)) continue;
      if (best < 0 || area2[d] < area2[best]) best = d;
    }
    int f = best >= 0 ? face_of_cycle[best] : unbounded;
    face_of_cycle[c] = f;
    sub.face[f].cycle.push_back(cyc_start[c]);
  }

  for (int h = 0; h < static_cast<int>(sub.half.size()); ++h)
    sub.half[h].face = face_of_cycle[cyc_of[h]];

  assert(sub.euler_ok());
  return sub;
}

// Procedure: merge_collinear
// Joins chains across degree-2 vertices whose two incident segments are
// collinear; used before rebuilding a dissolved subdivision so edge counts
// reflect maximal straight segments.
inline std::vector<Seg> merge_collinear(std::vector<Seg> segs) {
  for (bool changed = true; changed;) {
    changed = false;
    std::map<Point, std::vector<size_t>> at;
    for (size_t i = 0; i < segs.size(); ++i) {
      at[segs[i].a].push_back(i);
      at[segs[i].b].push_back(i);
    }
    for (const auto& kv : at) {
      if (kv.second.size() != 2) continue;
      size_t i = kv.second[0], j = kv.second[1];
      if (i == j) continue;  // degenerate loop guard
      const Point& p = kv.first;
      Point u = segs[i].a == p ? segs[i].b : segs[i].a;
      Point w = segs[j].a == p ? segs[j].b : segs[j].a;
      if (u == w || !collinear(u, p, w)) continue;
      segs[i] = Seg{u, w};
      segs.erase(segs.begin() + static_cast<long>(j));
      changed = true;
      break;  // index maps are stale; restart the scan
    }
  }
  return segs;
}

// Labeling callback: maps an interior point of a face to its labels.
using FaceLabeler = std::function<std::pair<FaceLabel, FaceLabel>(const Point&)>;

inline void label_faces(PlanarSubdivision& sub, const FaceLabeler& labeler) {
  for (size_t f = 0; f < sub.face.size(); ++f) {
    if (sub.face[f].unbounded) continue;
    auto [l1, l2] = labeler(sub.interior_point(static_cast<int>(f)));
    sub.face[f].label = std::move(l1);
    sub.face[f].label2 = std::move(l2);
  }
}

// Procedure: dissolve_relabel
// Drops edges whose two incident faces carry identical labels, merges the
// surviving collinear chains, rebuilds the arrangement and labels the final
// faces. The box boundary always survives.
inline PlanarSubdivision dissolve_relabel(const PlanarSubdivision& sub,
                                          const FaceLabeler& labeler) {
  std::vector<Seg> keep;
  for (int h = 0; h < static_cast<int>(sub.half.size()); h += 2) {
    const auto& fa = sub.face[sub.half[h].face];
    const auto& fb = sub.face[sub.half[h + 1].face];
    if (fa.unbounded || fb.unbounded || fa.label != fb.label || fa.label2 != fb.label2)
      keep.push_back(sub.edge_seg(h));
  }
  PlanarSubdivision out = build_arrangement(merge_collinear(std::move(keep)), sub.box);
  label_faces(out, labeler);
  return out;
}

// Procedure: overlay
// Superimposes two subdivisions over the same box. Each output face carries
// the label of the containing face of `a` and, in label2, of `b`.
inline PlanarSubdivision overlay(const PlanarSubdivision& a, const PlanarSubdivision& b) {
  assert(a.box.x0 == b.box.x0 && a.box.y0 == b.box.y0 && a.box.x1 == b.box.x1 &&
         a.box.y1 == b.box.y1);
  std::vector<Seg> segs = a.edge_segments();
  std::vector<Seg> bs = b.edge_segments();
  segs.insert(segs.end(), bs.begin(), bs.end());
  PlanarSubdivision out = build_arrangement(segs, a.box);
  label_faces(out, [&](const Point& p) {
    int fa = a.face_at(p);
    int fb = b.face_at(p);
    return std::make_pair(a.face[fa].label, b.face[fb].label);
  });
  return out;
}

}  // namespace cityvor
