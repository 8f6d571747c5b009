#pragma once
// Needles: weighted network segments that summarize every way the network can
// be left when travelling from a fixed source. The minimum of the needle
// distance functions of a source equals its city-metric distance everywhere.

#include <algorithm>
#include <cassert>
#include <tuple>
#include <vector>

#include "cityvor/city.hpp"

namespace cityvor {

// A needle sits on a network edge, anchored where the source's shortest path
// reaches it (weight = city distance to the anchor), pointing at the edge
// endpoint it can ride towards. The anchor-only needle (anchor == tip) covers
// plain L1 travel from the anchor.
struct Needle {
  Point anchor;
  Point tip;
  Rat weight;
  int site = -1;  // owner site index; -1 when synthetic

  bool is_point() const { return anchor == tip; }
  bool horizontal() const { return anchor.y == tip.y && anchor.x != tip.x; }

  Rat lo_x() const { return rat_min(anchor.x, tip.x); }
  Rat hi_x() const { return rat_max(anchor.x, tip.x); }
  Rat lo_y() const { return rat_min(anchor.y, tip.y); }
  Rat hi_y() const { return rat_max(anchor.y, tip.y); }

  bool operator==(const Needle& o) const {
    return anchor == o.anchor && tip == o.tip && weight == o.weight && site == o.site;
  }
};

// Canonical total order used wherever a deterministic tie-break among needles
// is needed.
inline bool needle_less(const Needle& a, const Needle& b) {
  if (a.site != b.site) return a.site < b.site;
  if (a.anchor != b.anchor) return a.anchor < b.anchor;
  if (a.tip != b.tip) return a.tip < b.tip;
  return a.weight < b.weight;
}

// Procedure: needle_distance
// weight + best over exit points t on the needle segment of
// ride(anchor, t)/nu + L1(t, r). The optimum exits at r's coordinate clamped
// to the needle span, which keeps this closed-form and exact.
inline Rat needle_distance(const Needle& n, const Point& r, const Rat& nu) {
  if (n.is_point()) return n.weight + l1_distance(n.anchor, r);
  if (n.horizontal()) {
    Rat t = r.x < n.lo_x() ? n.lo_x() : (r.x > n.hi_x() ? n.hi_x() : r.x);
    return n.weight + rat_abs(t - n.anchor.x) / nu + rat_abs(r.x - t) +
           rat_abs(r.y - n.anchor.y);
  }
  Rat t = r.y < n.lo_y() ? n.lo_y() : (r.y > n.hi_y() ? n.hi_y() : r.y);
  return n.weight + rat_abs(t - n.anchor.y) / nu + rat_abs(r.y - t) +
         rat_abs(r.x - n.anchor.x);
}

// Procedure: build_needles
// One shortest-path pass over the source's activation graph, then a needle
// per (activation point, incident edge direction) plus the source's own
// point needle. Canonically ordered.
inline std::vector<Needle> build_needles(const Point& s, const TransportNetwork& net) {
  ActivationGraph g = build_activation_graph(activation_points(s, net), net);
  int is = g.index_of(s);
  assert(is >= 0);
  std::vector<Rat> dist = graph_distances(g, is);

  std::vector<Needle> out;
  out.push_back(Needle{s, s, Rat(0), -1});
  for (size_t i = 0; i < g.node.size(); ++i) {
    for (int e : g.node_edges[i]) {
      const IsoSegment& seg = net.edges[e];
      for (const Point& tip : {std::min(seg.a, seg.b), std::max(seg.a, seg.b)}) {
        if (tip == g.node[i]) continue;
        out.push_back(Needle{g.node[i], tip, dist[i], -1});
      }
    }
  }
  std::sort(out.begin(), out.end(), needle_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Needle& a, const Needle& b) { return a == b; }),
            out.end());
  return out;
}

// Minimum needle distance with the canonical (value, needle order) tie-break;
// returns the index of the winning needle.
inline int min_needle_at(const std::vector<Needle>& needles, const Point& r, const Rat& nu,
                         Rat* value = nullptr) {
  assert(!needles.empty());
  int best = 0;
  Rat bestv = needle_distance(needles[0], r, nu);
  for (size_t i = 1; i < needles.size(); ++i) {
    Rat v = needle_distance(needles[i], r, nu);
    if (v < bestv || (v == bestv && needle_less(needles[i], needles[best]))) {
      best = static_cast<int>(i);
      bestv = v;
    }
  }
  if (value) *value = bestv;
  return best;
}

}  // namespace cityvor
