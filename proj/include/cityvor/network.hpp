#pragma once
// Isothetic transportation networks: validation, axis-ray projections and
// activation point sets.

#include <algorithm>
#include <string>
#include <vector>

#include "cityvor/geometry.hpp"

namespace cityvor {

// Axis-parallel segments traversed at speed nu > 1; off-network movement is
// L1 at speed 1.
struct TransportNetwork {
  std::vector<IsoSegment> edges;
  Rat nu = 2;
};

inline std::vector<Point> network_vertices(const TransportNetwork& net) {
  std::vector<Point> v;
  for (const auto& e : net.edges) {
    v.push_back(e.a);
    v.push_back(e.b);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct NetworkReport {
  bool ok = true;
  std::vector<std::string> errors;

  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

// Procedure: validate_network
// Speed must exceed 1; edges must be axis-parallel with positive length and
// may meet only at shared endpoints; no vertex exceeds degree 4.
inline NetworkReport validate_network(const TransportNetwork& net) {
  NetworkReport rep;
  if (!(net.nu > 1)) rep.fail("network speed must be greater than 1");
  for (size_t i = 0; i < net.edges.size(); ++i) {
    const auto& e = net.edges[i];
    if (e.degenerate()) {
      rep.fail("edge " + std::to_string(i) + " has zero length");
      continue;
    }
    if (!is_isothetic(e)) rep.fail("non-isothetic edge " + std::to_string(i));
  }
  if (!rep.ok) return rep;

  for (size_t i = 0; i < net.edges.size(); ++i) {
    for (size_t j = i + 1; j < net.edges.size(); ++j) {
      SegIntersection hit = seg_intersect(net.edges[i], net.edges[j]);
      if (hit.kind == SegIntersection::Overlap) {
        rep.fail("edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      } else if (hit.kind == SegIntersection::At) {
        bool endpoint_i = hit.p == net.edges[i].a || hit.p == net.edges[i].b;
        bool endpoint_j = hit.p == net.edges[j].a || hit.p == net.edges[j].b;
        if (!endpoint_i || !endpoint_j)
          rep.fail("edges " + std::to_string(i) + " and " + std::to_string(j) +
                   " meet away from a shared endpoint");
      }
    }
  }

  std::vector<Point> verts = network_vertices(net);
  for (const Point& v : verts) {
    int deg = 0;
    for (const auto& e : net.edges)
      if (e.a == v || e.b == v) ++deg;
    if (deg > 4) rep.fail("network vertex has degree greater than 4");
  }
  return rep;
}

// Procedure: isothetic_projection
// First transversal hits of the four axis rays from p onto the network, in
// deterministic order (east, north, west, south; absent rays skipped).
// A ray collinear with an edge gains nothing from that edge, and a hit at the
// ray origin itself does not count.
inline std::vector<Point> isothetic_projection(const Point& p, const TransportNetwork& net) {
  std::vector<Point> out;
  struct Dir {
    int dx, dy;
  };
  const Dir dirs[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const Dir& d : dirs) {
    bool found = false;
    Rat best;  // distance along the ray, strictly positive
    for (const auto& e : net.edges) {
      if (d.dx != 0) {
        // Horizontal ray: only vertical edges cross its line transversally.
        if (!is_vertical(e)) continue;
        Rat ylo = rat_min(e.a.y, e.b.y), yhi = rat_max(e.a.y, e.b.y);
        if (p.y < ylo || p.y > yhi) continue;
        Rat t = d.dx > 0 ? e.a.x - p.x : p.x - e.a.x;
        if (sgn(t) <= 0) continue;
        if (!found || t < best) {
          best = t;
          found = true;
        }
      } else {
        if (!is_horizontal(e)) continue;
        Rat xlo = rat_min(e.a.x, e.b.x), xhi = rat_max(e.a.x, e.b.x);
        if (p.x < xlo || p.x > xhi) continue;
        Rat t = d.dy > 0 ? e.a.y - p.y : p.y - e.a.y;
        if (sgn(t) <= 0) continue;
        if (!found || t < best) {
          best = t;
          found = true;
        }
      }
    }
    if (found)
      out.push_back(Point{p.x + best * d.dx, p.y + best * d.dy});
  }
  return out;
}

// Sorted, duplicate-free activation set of p: the point itself, its ray
// projections, all network vertices, and their ray projections.
inline std::vector<Point> activation_points(const Point& p, const TransportNetwork& net) {
  std::vector<Point> pts = {p};
  for (const Point& q : isothetic_projection(p, net)) pts.push_back(q);
  for (const Point& v : network_vertices(net)) {
    pts.push_back(v);
    for (const Point& q : isothetic_projection(v, net)) pts.push_back(q);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace cityvor
