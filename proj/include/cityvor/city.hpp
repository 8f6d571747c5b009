#pragma once
// The city metric: L1 walking at speed 1 plus network riding at speed nu.
// Distances are computed exactly on a finite graph over activation points;
// the wavefront from any source changes speed only at such points, so the
// graph shortest path equals the true metric distance.

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "cityvor/network.hpp"

namespace cityvor {

// Cost of riding edge e from on-edge point u to the best exit, then walking
// L1 to the target. The optimal exit is the target's coordinate clamped to
// the edge span, which keeps this closed-form and exact. Mid-edge exits need
// no graph node because of this arc shape.
inline Rat ride_exit_cost(const Point& u, const IsoSegment& e, const Rat& nu,
                          const Point& target) {
  if (is_vertical(e)) {
    Rat lo = rat_min(e.a.y, e.b.y), hi = rat_max(e.a.y, e.b.y);
    Rat t = target.y < lo ? lo : (target.y > hi ? hi : target.y);
    return rat_abs(t - u.y) / nu + rat_abs(target.x - e.a.x) + rat_abs(target.y - t);
  }
  Rat lo = rat_min(e.a.x, e.b.x), hi = rat_max(e.a.x, e.b.x);
  Rat t = target.x < lo ? lo : (target.x > hi ? hi : target.x);
  return rat_abs(t - u.x) / nu + rat_abs(target.y - e.a.y) + rat_abs(target.x - t);
}

// Finite node set with network-edge memberships. Arcs are implicit between
// every node pair: plain L1, or ride-partway-then-walk along any edge through
// either endpoint (whichever is cheapest).
struct ActivationGraph {
  const TransportNetwork* net = nullptr;
  std::vector<Point> node;                    // sorted, unique
  std::vector<std::vector<int>> node_edges;   // incident network edge ids per node

  int index_of(const Point& p) const {
    auto it = std::lower_bound(node.begin(), node.end(), p);
    if (it == node.end() || !(*it == p)) return -1;
    return static_cast<int>(it - node.begin());
  }

  Rat arc_cost(int u, int v) const {
    Rat d = l1_distance(node[u], node[v]);
    for (int e : node_edges[u]) {
      Rat c = ride_exit_cost(node[u], net->edges[e], net->nu, node[v]);
      if (c < d) d = c;
    }
    for (int e : node_edges[v]) {
      Rat c = ride_exit_cost(node[v], net->edges[e], net->nu, node[u]);
      if (c < d) d = c;
    }
    return d;
  }
};

inline ActivationGraph build_activation_graph(std::vector<Point> nodes,
                                              const TransportNetwork& net) {
  ActivationGraph g;
  g.net = &net;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  g.node = std::move(nodes);
  g.node_edges.resize(g.node.size());
  for (size_t i = 0; i < g.node.size(); ++i)
    for (size_t e = 0; e < net.edges.size(); ++e)
      if (on_segment(g.node[i], net.edges[e]))
        g.node_edges[i].push_back(static_cast<int>(e));
  return g;
}

// Dense Dijkstra (the graph is complete). Optional per-node seed costs allow
// a virtual source with prescribed arc lengths.
inline std::vector<Rat> graph_distances(const ActivationGraph& g, int src) {
  size_t n = g.node.size();
  std::vector<Rat> dist(n);
  std::vector<bool> reached(n, false), done(n, false);
  dist[src] = 0;
  reached[src] = true;
  for (size_t round = 0; round < n; ++round) {
    int u = -1;
    for (size_t i = 0; i < n; ++i)
      if (reached[i] && !done[i] && (u < 0 || dist[i] < dist[u]))
        u = static_cast<int>(i);
    if (u < 0) break;
    done[u] = true;
    for (size_t v = 0; v < n; ++v) {
      if (done[v] || v == static_cast<size_t>(u)) continue;
      Rat cand = dist[u] + g.arc_cost(u, static_cast<int>(v));
      if (!reached[v] || cand < dist[v]) {
        dist[v] = cand;
        reached[v] = true;
      }
    }
  }
  assert(std::all_of(done.begin(), done.end(), [](bool b) { return b; }));
  return dist;
}

inline std::vector<Rat> graph_distances_seeded(const ActivationGraph& g,
                                               const std::vector<Rat>& seed) {
  size_t n = g.node.size();
  assert(seed.size() == n);
  std::vector<Rat> dist = seed;
  std::vector<bool> done(n, false);
  for (size_t round = 0; round < n; ++round) {
    int u = -1;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && (u < 0 || dist[i] < dist[u])) u = static_cast<int>(i);
    if (u < 0) break;
    done[u] = true;
    for (size_t v = 0; v < n; ++v) {
      if (done[v] || v == static_cast<size_t>(u)) continue;
      Rat cand = dist[u] + g.arc_cost(u, static_cast<int>(v));
      if (cand < dist[v]) dist[v] = cand;
    }
  }
  return dist;
}

// Procedure: city_distance
// Exact metric distance between two points: shortest path on the activation
// graph of both endpoints.
inline Rat city_distance(const Point& p, const Point& q, const TransportNetwork& net) {
  if (p == q) return Rat(0);
  std::vector<Point> nodes = activation_points(p, net);
  std::vector<Point> more = activation_points(q, net);
  nodes.insert(nodes.end(), more.begin(), more.end());
  ActivationGraph g = build_activation_graph(std::move(nodes), net);
  int ip = g.index_of(p), iq = g.index_of(q);
  assert(ip >= 0 && iq >= 0);
  return graph_distances(g, ip)[iq];
}

}  // namespace cityvor
