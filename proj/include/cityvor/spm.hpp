#pragma once
// Shortest path map of one site: partition of a box into faces by the last
// activation point a geodesic passes through (its "predecessor"). Faces are
// the dominance regions of the site's needles, merged per anchor point, so
// inside the face of predecessor q the metric distance from the site equals
// the needle distance of the needle anchored at q.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cityvor/envelope.hpp"
#include "cityvor/needles.hpp"

namespace cityvor {

struct ShortestPathMap {
  Point site;
  int site_id = -1;
  std::vector<Point> anchors;        // face label id -> predecessor point
  Envelope env;                      // needle envelope, faces labeled by anchor id
  std::vector<std::string> warnings; // general-position violations, not errors

  const PlanarSubdivision& sub() const { return env.sub(); }
  const std::vector<Needle>& needles() const { return env.needles(); }
};

// Procedure: degeneracy_warnings
// General-position check: an interior vertex where four or more edges meet
// means some needle tuple is equidistant along more than three directions.
// Reported, never fatal: the subdivision itself is still exact.
inline std::vector<std::string> vertex_degeneracy_warnings(
    const PlanarSubdivision& sub) {
  std::vector<int> degree(sub.vert.size(), 0);
  for (const auto& h : sub.half) ++degree[h.origin];
  std::vector<std::string> out;
  for (size_t v = 0; v < sub.vert.size(); ++v) {
    const Point& p = sub.vert[v];
    bool on_rim = p.x == sub.box.x0 || p.x == sub.box.x1 || p.y == sub.box.y0 ||
                  p.y == sub.box.y1;
    if (!on_rim && degree[v] >= 4)
      out.push_back("degenerate vertex (" + rat_str(p.x) + ", " + rat_str(p.y) +
                    "): " + std::to_string(degree[v]) + " edges meet");
  }
  return out;
}

// Procedure: build_spm
// Needles of the site, lower envelope under the network speed, faces labeled
// by the anchor each winning needle hangs from.
inline ShortestPathMap build_spm(const Point& s, const TransportNetwork& net,
                                 const Box& box, int site_id = 0) {
  assert(box.contains(s));
  std::vector<Needle> ns = build_needles(s, net);
  for (auto& n : ns) n.site = site_id;
  std::vector<Point> anchors;
  anchors.reserve(ns.size());
  for (const auto& n : ns) anchors.push_back(n.anchor);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  auto cls = [anchors](int, const Needle& n) -> int {
    auto it = std::lower_bound(anchors.begin(), anchors.end(), n.anchor);
    assert(it != anchors.end() && *it == n.anchor);
    return static_cast<int>(it - anchors.begin());
  };
  ShortestPathMap spm{s, site_id, std::move(anchors),
                      Envelope(std::move(ns), net.nu, box, cls),
                      {}};
  spm.warnings = vertex_degeneracy_warnings(spm.sub());
  return spm;
}

// Procedure: predecessor
// Activation point whose needle realizes the distance at r, ties broken by
// the canonical needle order so that edge and vertex queries are stable.
inline Point predecessor(const ShortestPathMap& spm, const Point& r) {
  if (!spm.env.box().contains(r))
    throw std::domain_error("predecessor query outside the map box");
  return spm.anchors[spm.env.label_at(r)];
}

// Convenience: the needle that realizes the distance at r (canonical winner).
inline const Needle& winning_needle(const ShortestPathMap& spm, const Point& r) {
  if (!spm.env.box().contains(r))
    throw std::domain_error("needle query outside the map box");
  return spm.needles()[spm.env.winner_at(r)];
}

}  // namespace cityvor
