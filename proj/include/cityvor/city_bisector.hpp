#pragma once
// Bisector of two sites under the network metric: the boundary between the
// territories of their needle sets, cut into pieces by the predecessor pair.
// Each piece lies inside one cell of the overlaid shortest path maps, so it
// is a sub-curve of a single needle-against-needle bisector; the junctions
// between consecutive pieces are the mixed vertices.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cityvor/bisect.hpp"
#include "cityvor/spm.hpp"

namespace cityvor {

struct BisectorPiece {
  PolyLine poly;
  Point pred_p, pred_q;  // predecessors of the two sites along this piece
  int chain = 0;         // connected component index
};

struct CityBisector {
  Point site_p, site_q;
  int id_p = 0, id_q = 1;
  std::vector<BisectorPiece> pieces;  // chain by chain, in walk order
  int chain_count = 0;
  std::vector<bool> chain_closed;     // per chain: true when it is a loop
};

struct MixedVertex {
  Point location;
  int site_p = -1, site_q = -1;  // ids of the edge's two sites
  int changing = -1;             // the site whose predecessor switches here
  Point w1, w2;                  // its predecessors on either side
  Point stable_pred;             // the other site's predecessor
  // A mixed vertex is interior for the region of the site whose map changes.
  bool interior_for(int site) const { return site == changing; }
};

namespace detail {

// Split [u,v] at every crossing with the given segments and return the chain
// of split points from u to v (inclusive), ordered along the segment.
inline std::vector<Point> split_points(const Point& u, const Point& v,
                                       const std::vector<Seg>& cutters) {
  std::vector<Point> pts{u, v};
  Seg s{u, v};
  for (const Seg& c : cutters) {
    SegIntersection hit = seg_intersect(s, c);
    if (hit.kind == SegIntersection::At) pts.push_back(hit.p);
    if (hit.kind == SegIntersection::Overlap) {
      pts.push_back(hit.q0);
      pts.push_back(hit.q1);
    }
  }
  Rat dx = v.x - u.x, dy = v.y - u.y;
  auto key = [&](const Point& w) -> Rat {
    return (w.x - u.x) * dx + (w.y - u.y) * dy;
  };
  std::sort(pts.begin(), pts.end(),
            [&](const Point& a, const Point& b) { return key(a) < key(b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Interior edges of a subdivision: the curves across which the face label
// actually changes (box rim edges have the unbounded face on one side).
inline std::vector<Seg> interior_edges(const PlanarSubdivision& sub) {
  std::vector<Seg> out;
  for (int e = 0; e < sub.edge_count(); ++e) {
    if (sub.face[sub.half[2 * e].face].unbounded) continue;
    if (sub.face[sub.half[2 * e + 1].face].unbounded) continue;
    out.push_back(sub.edge_seg(2 * e));
  }
  return out;
}

inline void append_simplified(PolyLine& poly, const Point& next) {
  if (!poly.empty() && poly.back() == next) return;
  if (poly.size() >= 2 && collinear(poly[poly.size() - 2], poly.back(), next))
    poly.back() = next;
  else
    poly.push_back(next);
}

// Procedure: decompose_chain
// Refines one equidistant chain at every crossing with the predecessor
// boundaries (cutters) and groups maximal runs with a constant predecessor
// pair into pieces. Closed chains are rotated so a run never wraps around
// the artificial polyline start.
inline void decompose_chain(const PolyLine& chain, bool closed,
                            const ShortestPathMap& sp, const ShortestPathMap& sq,
                            const std::vector<Seg>& cutters, int chain_id,
                            std::vector<BisectorPiece>& out) {
  struct Sub {
    Point a, b;
    Point pp, pq;
  };
  std::vector<Sub> subs;
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    std::vector<Point> pts = split_points(chain[i], chain[i + 1], cutters);
    for (size_t j = 0; j + 1 < pts.size(); ++j) {
      Point m = Seg{pts[j], pts[j + 1]}.midpoint();
      subs.push_back({pts[j], pts[j + 1], predecessor(sp, m), predecessor(sq, m)});
    }
  }
  assert(!subs.empty());
  auto same = [](const Sub& a, const Sub& b) { return a.pp == b.pp && a.pq == b.pq; };

  if (closed) {
    size_t start = subs.size();
    for (size_t i = 0; i < subs.size(); ++i)
      if (!same(subs[(i + subs.size() - 1) % subs.size()], subs[i])) {
        start = i;
        break;
      }
    if (start < subs.size())
      std::rotate(subs.begin(), subs.begin() + static_cast<long>(start), subs.end());
  }

  for (size_t i = 0; i < subs.size();) {
    size_t j = i;
    BisectorPiece piece;
    piece.pred_p = subs[i].pp;
    piece.pred_q = subs[i].pq;
    piece.chain = chain_id;
    piece.poly.push_back(subs[i].a);
    while (j < subs.size() && same(subs[i], subs[j])) {
      append_simplified(piece.poly, subs[j].b);
      ++j;
    }
    out.push_back(std::move(piece));
    i = j;
  }
}

}  // namespace detail

// Procedure: city_bisector
// The two sites' needles compete in one envelope labeled by site; the
// interior edges of that envelope are the canonical equidistant curve.
// Chains are then re-split wherever they cross a predecessor boundary of
// either map, and maximal runs with a constant predecessor pair become the
// pieces. Junction points between pieces are the mixed vertices.
inline CityBisector city_bisector(const Point& p, const Point& q,
                                  const TransportNetwork& net, const Box& box,
                                  int id_p = 0, int id_q = 1) {
  if (p == q) throw std::invalid_argument("coincident sites");
  assert(id_p != id_q);
  ShortestPathMap sp = build_spm(p, net, box, id_p);
  ShortestPathMap sq = build_spm(q, net, box, id_q);

  std::vector<Needle> all = sp.needles();
  all.insert(all.end(), sq.needles().begin(), sq.needles().end());
  Envelope env(std::move(all), net.nu, box,
               [](int, const Needle& n) { return n.site; });

  std::vector<PolyLine> chains = stitch_segments(detail::interior_edges(env.sub()));

  std::vector<Seg> cutters = detail::interior_edges(sp.sub());
  {
    std::vector<Seg> more = detail::interior_edges(sq.sub());
    cutters.insert(cutters.end(), more.begin(), more.end());
  }

  CityBisector out;
  out.site_p = p;
  out.site_q = q;
  out.id_p = id_p;
  out.id_q = id_q;
  out.chain_count = static_cast<int>(chains.size());

  for (int ci = 0; ci < static_cast<int>(chains.size()); ++ci) {
    const PolyLine& chain = chains[ci];
    bool closed = chain.size() > 2 && chain.front() == chain.back();
    out.chain_closed.push_back(closed);
    detail::decompose_chain(chain, closed, sp, sq, cutters, ci, out.pieces);
  }
  return out;
}

// Procedure: mixed_vertices_of
// Junctions between consecutive pieces of each chain. The site whose
// predecessor differs across the junction is the changing site; a vertex
// where both change at once is reported once per changing site.
inline std::vector<MixedVertex> mixed_vertices_of(const CityBisector& bis) {
  std::vector<MixedVertex> out;
  auto emit = [&](const BisectorPiece& a, const BisectorPiece& b, const Point& at) {
    if (a.pred_p != b.pred_p) {
      MixedVertex m;
      m.location = at;
      m.site_p = bis.id_p;
      m.site_q = bis.id_q;
      m.changing = bis.id_p;
      m.w1 = a.pred_p;
      m.w2 = b.pred_p;
      m.stable_pred = a.pred_q;
      out.push_back(m);
    }
    if (a.pred_q != b.pred_q) {
      MixedVertex m;
      m.location = at;
      m.site_p = bis.id_p;
      m.site_q = bis.id_q;
      m.changing = bis.id_q;
      m.w1 = a.pred_q;
      m.w2 = b.pred_q;
      m.stable_pred = a.pred_p;
      out.push_back(m);
    }
  };
  for (size_t i = 0; i < bis.pieces.size(); ++i) {
    const BisectorPiece& a = bis.pieces[i];
    if (i + 1 < bis.pieces.size() && bis.pieces[i + 1].chain == a.chain) {
      emit(a, bis.pieces[i + 1], a.poly.back());
      continue;
    }
    // Last piece of a closed chain joins back to the chain's first piece.
    size_t first = i;
    while (first > 0 && bis.pieces[first - 1].chain == a.chain) --first;
    if (bis.chain_closed[a.chain] && first != i) emit(a, bis.pieces[first], a.poly.back());
  }
  return out;
}

}  // namespace cityvor
