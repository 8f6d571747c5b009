#pragma once
// Higher-order nearest-site diagrams under the network metric. The first
// order is one envelope over every site's needles; each following order
// refines the current regions by the nearest-competitor envelope of their
// adjacent sites and dissolves boundaries whose sides end up with equal
// label sets. Equidistant chains, diagram vertices, mixed vertices and
// structural statistics are derived from the labeled subdivision.

#include <algorithm>
#include <cassert>
#include <iterator>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cityvor/city_bisector.hpp"

namespace cityvor {

struct Instance {
  std::vector<Point> sites;
  TransportNetwork net;
  Box box;
};

struct InstanceReport {
  bool ok = true;
  std::vector<std::string> errors;

  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

// Procedure: validate_instance
// The network must validate on its own; sites must be distinct and strictly
// inside the box; network vertices must not leave the box.
inline InstanceReport validate_instance(const Instance& inst) {
  InstanceReport rep;
  NetworkReport net_rep = validate_network(inst.net);
  for (const std::string& e : net_rep.errors) rep.fail(e);

  if (!(inst.box.x0 < inst.box.x1) || !(inst.box.y0 < inst.box.y1))
    rep.fail("bounding box is empty");
  if (inst.sites.empty()) rep.fail("instance has no sites");
  for (size_t i = 0; i < inst.sites.size(); ++i) {
    if (!inst.box.strictly_contains(inst.sites[i]))
      rep.fail("site " + std::to_string(i) + " is not strictly inside the bounding box");
    for (size_t j = i + 1; j < inst.sites.size(); ++j)
      if (inst.sites[i] == inst.sites[j])
        rep.fail("sites " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  }
  for (const Point& v : network_vertices(inst.net))
    if (!inst.box.contains(v))
      rep.fail("network vertex (" + rat_str(v.x) + ", " + rat_str(v.y) +
               ") is outside the bounding box");
  return rep;
}

// A diagram of some order: bounded faces carry the sorted set of the `order`
// nearest sites as their label.
struct OrderKDiagram {
  int order = 1;
  PlanarSubdivision sub;
};

// Thrown when a construction produces a vertex that general position rules
// out: four or more edges meeting at an interior point.
struct DegeneracyError : std::runtime_error {
  Point location;
  std::vector<int> sites;  // distinct site ids on the faces around the vertex
  int degree = 0;

  DegeneracyError(const Point& at, std::vector<int> ids, int deg)
      : std::runtime_error(describe(at, ids, deg)),
        location(at),
        sites(std::move(ids)),
        degree(deg) {}

 private:
  static std::string describe(const Point& at, const std::vector<int>& ids, int deg) {
    std::string msg = "degenerate diagram vertex at (" + rat_str(at.x) + ", " +
                      rat_str(at.y) + "): " + std::to_string(deg) +
                      " edges meet; sites involved:";
    for (int id : ids) msg += " " + std::to_string(id);
    return msg;
  }
};

namespace detail {

inline bool on_box_rim(const Point& p, const Box& box) {
  return p.x == box.x0 || p.x == box.x1 || p.y == box.y0 || p.y == box.y1;
}

inline std::vector<int> vertex_degrees(const PlanarSubdivision& sub) {
  std::vector<int> deg(sub.vert.size(), 0);
  for (const auto& h : sub.half) ++deg[h.origin];
  return deg;
}

}  // namespace detail

// Procedure: check_diagram_degeneracy
// Interior vertices of a diagram must have degree at most three; a higher
// degree means four regions tie at a point (or a boundary touches itself),
// which the exact pipeline refuses rather than resolves silently.
inline void check_diagram_degeneracy(const PlanarSubdivision& sub) {
  std::vector<int> deg = detail::vertex_degrees(sub);
  for (size_t v = 0; v < sub.vert.size(); ++v) {
    if (detail::on_box_rim(sub.vert[v], sub.box)) continue;
    if (deg[v] < 4) continue;
    std::set<int> ids;
    for (size_t h = 0; h < sub.half.size(); ++h) {
      if (sub.half[h].origin != static_cast<int>(v)) continue;
      const auto& f = sub.face[sub.half[h].face];
      if (f.unbounded) continue;
      for (int id : f.label.ids) ids.insert(id);
    }
    throw DegeneracyError(sub.vert[v], std::vector<int>(ids.begin(), ids.end()), deg[v]);
  }
}

// Bounded faces grouped by label: one region per distinct site set.
inline std::map<std::vector<int>, std::vector<int>> diagram_regions(
    const PlanarSubdivision& sub) {
  std::map<std::vector<int>, std::vector<int>> out;
  for (size_t f = 0; f < sub.face.size(); ++f)
    if (!sub.face[f].unbounded) out[sub.face[f].label.ids].push_back(static_cast<int>(f));
  return out;
}

// Shortest path maps of every site, indexed by site id.
struct SpmCache {
  std::vector<ShortestPathMap> by_site;
};

inline SpmCache build_spm_cache(const Instance& inst) {
  SpmCache cache;
  cache.by_site.reserve(inst.sites.size());
  for (size_t i = 0; i < inst.sites.size(); ++i)
    cache.by_site.push_back(build_spm(inst.sites[i], inst.net, inst.box, static_cast<int>(i)));
  return cache;
}

// Procedure: compute_first_order
// All sites' needles compete in a single envelope; faces keep the winning
// site as a singleton label.
inline OrderKDiagram compute_first_order(const Instance& inst, const SpmCache* cache = nullptr) {
  InstanceReport rep = validate_instance(inst);
  if (!rep.ok) throw std::invalid_argument("invalid instance: " + rep.errors.front());

  SpmCache local;
  if (!cache) {
    local = build_spm_cache(inst);
    cache = &local;
  }
  std::vector<Needle> pool;
  for (const ShortestPathMap& spm : cache->by_site)
    pool.insert(pool.end(), spm.needles().begin(), spm.needles().end());
  Envelope env(std::move(pool), inst.net.nu, inst.box,
               [](int, const Needle& n) { return n.site; });

  OrderKDiagram d;
  d.order = 1;
  d.sub = env.sub();
  check_diagram_degeneracy(d.sub);
  return d;
}

// Procedure: compute_next_order
// Within each region the next-nearest site is one of the sites adjacent
// across the region's boundary. Their needles compete in a per-region
// envelope; the envelope's ownership boundaries are clipped to the region
// and added to the arrangement, and every face is relabeled with the
// region's sites plus its nearest competitor. Old boundaries whose sides
// now agree dissolve.
inline OrderKDiagram compute_next_order(const OrderKDiagram& vj, const Instance& inst,
                                        const SpmCache* cache = nullptr) {
  const int n = static_cast<int>(inst.sites.size());
  if (vj.order + 1 > n - 1) throw std::invalid_argument("next order would exceed n - 1");

  SpmCache local;
  if (!cache) {
    local = build_spm_cache(inst);
    cache = &local;
  }

  const PlanarSubdivision& sub = vj.sub;
  auto regions = diagram_regions(sub);

  // Sites adjacent to each region: the one-site surplus of each neighbor label.
  std::map<std::vector<int>, std::set<int>> adjacent;
  for (int e = 0; e < sub.edge_count(); ++e) {
    const auto& fa = sub.face[sub.half[2 * e].face];
    const auto& fb = sub.face[sub.half[2 * e + 1].face];
    if (fa.unbounded || fb.unbounded || fa.label == fb.label) continue;
    std::vector<int> a_only, b_only;
    std::set_difference(fa.label.ids.begin(), fa.label.ids.end(), fb.label.ids.begin(),
                        fb.label.ids.end(), std::back_inserter(a_only));
    std::set_difference(fb.label.ids.begin(), fb.label.ids.end(), fa.label.ids.begin(),
                        fa.label.ids.end(), std::back_inserter(b_only));
    assert(a_only.size() == 1 && b_only.size() == 1);
    adjacent[fa.label.ids].insert(b_only[0]);
    adjacent[fb.label.ids].insert(a_only[0]);
  }

  std::map<std::vector<int>, std::unique_ptr<Envelope>> region_env;
  std::vector<Seg> soup = sub.edge_segments();
  for (const auto& [H, faces] : regions) {
    auto it = adjacent.find(H);
    assert(it != adjacent.end() && !it->second.empty());

    std::vector<Needle> pool;
    for (int q : it->second) {
      const auto& ns = cache->by_site[q].needles();
      pool.insert(pool.end(), ns.begin(), ns.end());
    }
    auto env = std::make_unique<Envelope>(std::move(pool), inst.net.nu, inst.box,
                                          [](int, const Needle& nd) { return nd.site; });

    // Competitor boundaries survive only where they run through this region.
    std::set<int> face_set(faces.begin(), faces.end());
    std::vector<Seg> boundary;
    for (int e = 0; e < sub.edge_count(); ++e)
      if (face_set.count(sub.half[2 * e].face) || face_set.count(sub.half[2 * e + 1].face))
        boundary.push_back(sub.edge_seg(2 * e));

    for (const Seg& s : detail::interior_edges(env->sub())) {
      std::vector<Point> pts = detail::split_points(s.a, s.b, boundary);
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Point m = Seg{pts[i], pts[i + 1]}.midpoint();
        bool on_boundary = false;
        for (const Seg& b : boundary)
          if (on_segment(m, b)) {
            on_boundary = true;
            break;
          }
        if (on_boundary) continue;
        if (face_set.count(sub.face_at(m))) soup.push_back(Seg{pts[i], pts[i + 1]});
      }
    }
    region_env.emplace(H, std::move(env));
  }

  PlanarSubdivision arr = build_arrangement(soup, inst.box);
  auto labeler = [&](const Point& x) -> std::pair<FaceLabel, FaceLabel> {
    int f = sub.face_at(x);
    const std::vector<int>& H = sub.face[f].label.ids;
    int q = region_env.at(H)->label_at(x);
    assert(!std::binary_search(H.begin(), H.end(), q));
    std::vector<int> ids = H;
    ids.insert(std::lower_bound(ids.begin(), ids.end(), q), q);
    return {FaceLabel{std::move(ids)}, FaceLabel{}};
  };
  label_faces(arr, labeler);

  OrderKDiagram out;
  out.order = vj.order + 1;
  out.sub = dissolve_relabel(arr, labeler);
  check_diagram_degeneracy(out.sub);
  return out;
}

// Procedure: compute_kth_order
// First order, then one refinement per additional order.
inline OrderKDiagram compute_kth_order(const Instance& inst, int k) {
  const int n = static_cast<int>(inst.sites.size());
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("order must lie between 1 and the site count minus one");
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = compute_first_order(inst, &cache);
  while (d.order < k) d = compute_next_order(d, inst, &cache);
  return d;
}

// One connected equidistant chain between two regions. The labels differ in
// exactly one site each way: site_p is surplus on the label_a side, site_q on
// the label_b side.
struct DiagramEdge {
  std::vector<int> label_a, label_b;  // label_a < label_b lexicographically
  int site_p = -1, site_q = -1;
  PolyLine poly;  // closed chains repeat their first point at the end
  bool closed = false;
};

// Procedure: diagram_edges
// Interior edges grouped by the unordered pair of side labels, each group
// stitched into maximal chains.
inline std::vector<DiagramEdge> diagram_edges(const OrderKDiagram& d) {
  const PlanarSubdivision& sub = d.sub;
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<Seg>> groups;
  for (int e = 0; e < sub.edge_count(); ++e) {
    const auto& fa = sub.face[sub.half[2 * e].face];
    const auto& fb = sub.face[sub.half[2 * e + 1].face];
    if (fa.unbounded || fb.unbounded) continue;
    std::pair<std::vector<int>, std::vector<int>> key(fa.label.ids, fb.label.ids);
    if (key.second < key.first) std::swap(key.first, key.second);
    groups[std::move(key)].push_back(sub.edge_seg(2 * e));
  }

  std::vector<DiagramEdge> out;
  for (auto& [key, segs] : groups) {
    std::vector<int> a_only, b_only;
    std::set_difference(key.first.begin(), key.first.end(), key.second.begin(),
                        key.second.end(), std::back_inserter(a_only));
    std::set_difference(key.second.begin(), key.second.end(), key.first.begin(),
                        key.first.end(), std::back_inserter(b_only));
    assert(a_only.size() == 1 && b_only.size() == 1);
    for (PolyLine& poly : stitch_segments(std::move(segs))) {
      DiagramEdge de;
      de.label_a = key.first;
      de.label_b = key.second;
      de.site_p = a_only[0];
      de.site_q = b_only[0];
      de.closed = poly.size() > 2 && poly.front() == poly.back();
      de.poly = std::move(poly);
      out.push_back(std::move(de));
    }
  }
  return out;
}

// Interior vertices where at least three edges meet, in lexicographic order.
inline std::vector<Point> voronoi_vertices(const OrderKDiagram& d) {
  std::vector<int> deg = detail::vertex_degrees(d.sub);
  std::vector<Point> out;
  for (size_t v = 0; v < d.sub.vert.size(); ++v) {
    if (detail::on_box_rim(d.sub.vert[v], d.sub.box)) continue;
    if (deg[v] >= 3) out.push_back(d.sub.vert[v]);
  }
  return out;
}

// Procedure: find_mixed_vertices
// Every equidistant chain is decomposed along the predecessor boundaries of
// its two surplus sites; the junctions between consecutive constant-
// predecessor pieces are the mixed vertices. `spms` must hold the shortest
// path map of site i at index i.
inline std::vector<MixedVertex> find_mixed_vertices(const OrderKDiagram& d,
                                                    const std::vector<ShortestPathMap>& spms) {
  std::map<int, std::vector<Seg>> cuts;
  auto cuts_of = [&](int s) -> const std::vector<Seg>& {
    auto it = cuts.find(s);
    if (it == cuts.end()) it = cuts.emplace(s, detail::interior_edges(spms[s].sub())).first;
    return it->second;
  };

  std::vector<MixedVertex> out;
  for (const DiagramEdge& de : diagram_edges(d)) {
    assert(de.site_p < static_cast<int>(spms.size()) &&
           de.site_q < static_cast<int>(spms.size()));
    assert(spms[de.site_p].site_id == de.site_p && spms[de.site_q].site_id == de.site_q);

    std::vector<Seg> cutters = cuts_of(de.site_p);
    {
      const std::vector<Seg>& more = cuts_of(de.site_q);
      cutters.insert(cutters.end(), more.begin(), more.end());
    }

    CityBisector bis;
    bis.site_p = spms[de.site_p].site;
    bis.site_q = spms[de.site_q].site;
    bis.id_p = de.site_p;
    bis.id_q = de.site_q;
    bis.chain_count = 1;
    bis.chain_closed = {de.closed};
    detail::decompose_chain(de.poly, de.closed, spms[de.site_p], spms[de.site_q], cutters, 0,
                            bis.pieces);
    std::vector<MixedVertex> mv = mixed_vertices_of(bis);
    out.insert(out.end(), mv.begin(), mv.end());
  }
  return out;
}

// Procedure: canonical_polyline
// Direction- and start-independent form of a chain: collinear steps merged,
// open chains oriented from their smaller endpoint, closed chains rotated to
// their smallest corner and walked toward the smaller neighbor (the repeated
// closing point is kept). Two constructions of the same curve compare equal.
inline PolyLine canonical_polyline(const PolyLine& poly, bool closed) {
  PolyLine simp;
  for (const Point& p : poly) detail::append_simplified(simp, p);
  if (!closed) {
    if (simp.size() >= 2 && simp.back() < simp.front())
      std::reverse(simp.begin(), simp.end());
    return simp;
  }

  assert(simp.size() >= 4 && simp.front() == simp.back());
  simp.pop_back();
  PolyLine ring;
  for (size_t i = 0; i < simp.size(); ++i) {
    const Point& prev = simp[(i + simp.size() - 1) % simp.size()];
    const Point& next = simp[(i + 1) % simp.size()];
    if (!collinear(prev, simp[i], next)) ring.push_back(simp[i]);
  }
  size_t start = 0;
  for (size_t i = 1; i < ring.size(); ++i)
    if (ring[i] < ring[start]) start = i;
  std::rotate(ring.begin(), ring.begin() + static_cast<long>(start), ring.end());
  if (ring.size() >= 3 && ring.back() < ring[1])
    std::reverse(ring.begin() + 1, ring.end());
  ring.push_back(ring.front());
  return ring;
}

// Straight stretches of a chain after merging collinear steps; closed chains
// also merge across the artificial start point.
inline int polyline_segment_count(const PolyLine& poly, bool closed) {
  PolyLine simp;
  for (const Point& pt : poly) detail::append_simplified(simp, pt);
  int nseg = static_cast<int>(simp.size()) - 1;
  if (closed && nseg >= 2 && collinear(simp[simp.size() - 2], simp.back(), simp[1])) --nseg;
  return nseg;
}

struct StatsReport {
  int order = 0;
  int site_count = 0;
  int network_edge_count = 0;
  int vertex_count = 0;  // interior vertices of degree three or more
  int edge_count = 0;    // connected equidistant chains
  int face_count = 0;    // bounded faces
  int mixed_count = 0;
  std::vector<int> edge_segments;  // per chain: straight stretches
  std::vector<int> edge_pieces;    // per chain: constant-predecessor pieces
  std::vector<int> edge_mixed;     // per chain: mixed vertex records
  double seconds = 0;              // filled by callers that time the build
};

// Procedure: stats
// Structural counts of a diagram plus the per-chain complexity measures.
inline StatsReport stats(const OrderKDiagram& d, const Instance& inst,
                         const SpmCache* cache = nullptr) {
  SpmCache local;
  if (!cache) {
    local = build_spm_cache(inst);
    cache = &local;
  }

  StatsReport r;
  r.order = d.order;
  r.site_count = static_cast<int>(inst.sites.size());
  r.network_edge_count = static_cast<int>(inst.net.edges.size());
  for (const auto& f : d.sub.face)
    if (!f.unbounded) ++r.face_count;
  r.vertex_count = static_cast<int>(voronoi_vertices(d).size());

  std::map<int, std::vector<Seg>> cuts;
  auto cuts_of = [&](int s) -> const std::vector<Seg>& {
    auto it = cuts.find(s);
    if (it == cuts.end())
      it = cuts.emplace(s, detail::interior_edges(cache->by_site[s].sub())).first;
    return it->second;
  };

  for (const DiagramEdge& de : diagram_edges(d)) {
    ++r.edge_count;
    r.edge_segments.push_back(polyline_segment_count(de.poly, de.closed));

    std::vector<Seg> cutters = cuts_of(de.site_p);
    {
      const std::vector<Seg>& more = cuts_of(de.site_q);
      cutters.insert(cutters.end(), more.begin(), more.end());
    }
    CityBisector bis;
    bis.site_p = cache->by_site[de.site_p].site;
    bis.site_q = cache->by_site[de.site_q].site;
    bis.id_p = de.site_p;
    bis.id_q = de.site_q;
    bis.chain_count = 1;
    bis.chain_closed = {de.closed};
    detail::decompose_chain(de.poly, de.closed, cache->by_site[de.site_p],
                            cache->by_site[de.site_q], cutters, 0, bis.pieces);
    r.edge_pieces.push_back(static_cast<int>(bis.pieces.size()));
    int mv = static_cast<int>(mixed_vertices_of(bis).size());
    r.edge_mixed.push_back(mv);
    r.mixed_count += mv;
  }
  return r;
}

}  // namespace cityvor
