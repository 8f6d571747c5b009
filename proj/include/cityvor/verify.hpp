#pragma once
// Independent checking oracle, instance generators, and empirical growth
// reports for the diagram builders.

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cityvor/city.hpp"
#include "cityvor/diagrams.hpp"
#include "cityvor/farthest.hpp"

namespace cityvor {

// Label of a sample point: the k nearest sites with their distances, ranked
// by plain point-to-point travel-time queries only.
struct OracleLabel {
  Point point;
  std::vector<int> sites;   // the k site ids, ascending
  std::vector<Rat> dist;    // the k smallest distances, ascending
  bool degenerate = false;  // exact distance tie across the k-th position
};

// Procedure: oracle_classify
// Ranks every site by its travel time from r. Deliberately bypasses the
// wavefront machinery the diagram builders use: each distance is an
// independent two-point shortest-path query.
inline OracleLabel oracle_classify(const Point& r, const Instance& inst, int k) {
  int n = static_cast<int>(inst.sites.size());
  assert(k >= 1 && k <= n - 1);
  std::vector<std::pair<Rat, int>> ranked;
  for (int i = 0; i < n; ++i)
    ranked.emplace_back(city_distance(r, inst.sites[i], inst.net), i);
  std::sort(ranked.begin(), ranked.end());
  OracleLabel out;
  out.point = r;
  out.degenerate = ranked[k - 1].first == ranked[k].first;
  for (int i = 0; i < k; ++i) {
    out.sites.push_back(ranked[i].second);
    out.dist.push_back(ranked[i].first);
  }
  std::sort(out.sites.begin(), out.sites.end());
  return out;
}

namespace detail {

struct Lcg {
  unsigned long long state;
  explicit Lcg(unsigned long long seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}
  long next(long lo, long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
    return lo + static_cast<long>((state >> 33) % span);
  }
};

inline long rat_floor_long(const Rat& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f.get_si();
}

// Procedure: open_ring
// Three sides of the square [-r, r]^2: the side named by omit (0 east,
// 1 north, 2 west, 3 south) is left out, so the ring is a four-vertex
// U-shape whose gap blocks rides across one angular sector.
inline void open_ring(long r, int omit, std::vector<Seg>& edges) {
  Point sw = pt(-r, -r), se = pt(r, -r), ne = pt(r, r), nw = pt(-r, r);
  if (omit != 0) edges.push_back(Seg{se, ne});
  if (omit != 1) edges.push_back(Seg{ne, nw});
  if (omit != 2) edges.push_back(Seg{nw, sw});
  if (omit != 3) edges.push_back(Seg{sw, se});
}

// Procedure: square_walk
// Point at arc position u, 0 <= u < 8h, along the boundary of [-h, h]^2,
// starting at the corner (h, -h) and walking counterclockwise.
inline Point square_walk(const Rat& h, const Rat& u) {
  Rat side = 2 * h;
  if (u < side) return Point{h, -h + u};
  if (u < 2 * side) return Point{h - (u - side), h};
  if (u < 3 * side) return Point{-h, h - (u - 2 * side)};
  return Point{-h + (u - 3 * side), -h};
}

}  // namespace detail

struct WorstCaseParams {
  int k = 2;        // diagram order whose complexity the instance stresses
  int c = 10;       // network vertex count; c = 2 (mod 4), c >= 10
  int n = 3;        // total sites, n >= k+1
  Rat nu = 1000;    // fast rides so ride lengths decide cluster ownership
};

// Procedure: generate_worst_case
// Nested open transport rings around a tight cluster of k+1 sites, plus a
// far-away column of the remaining sites beside a single vertical segment.
// Each ring omits one side and the omitted side rotates a quarter turn per
// ring, so no single ring can absorb a route's angular movement: a ride
// around the gap of one ring must continue on other rings, and the boundary
// between consecutive cluster regions keeps bending where it crosses them.
// Every cluster site sits exactly on the boundary of [-1/2, 1/2]^2, so all
// of them reach the innermost ring at the same walking cost; with nu large,
// region ownership near the rings is decided by ride lengths alone. The
// counterclockwise stagger of the cluster keeps all point ties two-way.
inline Instance generate_worst_case(const WorstCaseParams& wp) {
  if (wp.k < 2) throw std::invalid_argument("worst case needs order at least 2");
  if (wp.c < 10 || wp.c % 4 != 2)
    throw std::invalid_argument("network vertex count must be at least 10 and 2 mod 4");
  if (wp.n < wp.k + 1) throw std::invalid_argument("need at least order+1 sites");
  if (wp.nu <= 1) throw std::invalid_argument("network speed must exceed 1");

  int m = (wp.c - 2) / 4;
  Instance inst;
  inst.net.nu = wp.nu;
  for (int j = 1; j <= m; ++j) detail::open_ring(2 * j, (j + 1) % 4, inst.net.edges);

  Rat h = rat(1, 2);
  int cluster = wp.k + 1;
  for (int i = 0; i < cluster; ++i) {
    Rat u = Rat(8) * h * i / cluster + h + Rat((i + 1) * (i + 2)) / (32 * cluster * cluster);
    inst.sites.push_back(detail::square_walk(h, u));
  }

  long span = 2 * m;
  long x0 = -(span + 100 * 4 * span);  // 100x the ring area's walking diameter
  inst.net.edges.push_back(Seg{pt(x0, 0), pt(x0, 4)});
  int remote = wp.n - wp.k - 1;
  for (int i = 0; i < remote; ++i) {
    Rat x = Rat(x0) + 3 + Rat(i) / 4;
    Rat y = Rat(6) + 3 * i + rat(1, 8) + Rat(i % 3) / 4;
    inst.sites.push_back(Point{x, y});
  }

  long top = std::max<long>(span, remote > 0 ? 10 + 3 * remote : 4);
  inst.box = Box{Rat(x0 - 12), Rat(-span - 12), Rat(span + 12), Rat(top + 12)};
  return inst;
}

// Procedure: worst_case_common_edges
// Segment totals of the boundaries between consecutive cluster regions of the
// order-k diagram: entry i covers the chains separating the faces where
// cluster site i resp. i+1 is the farthest of the cluster, i.e. the faces
// labeled with the cluster minus that one site.
inline std::vector<int> worst_case_common_edges(const OrderKDiagram& d, int k) {
  auto complement = [&](int i) {
    std::vector<int> ids;
    for (int s = 0; s <= k; ++s)
      if (s != i) ids.push_back(s);
    return ids;
  };
  std::vector<DiagramEdge> edges = diagram_edges(d);
  std::vector<int> segs(static_cast<size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    std::vector<int> a = complement(i), b = complement(i + 1);
    if (b < a) std::swap(a, b);
    for (const DiagramEdge& de : edges)
      if (de.label_a == a && de.label_b == b)
        segs[static_cast<size_t>(i)] += polyline_segment_count(de.poly, de.closed);
  }
  return segs;
}

// Procedure: generate_random
// Deterministic sampling of n sites and c/2 pairwise disjoint axis-parallel
// segments strictly inside the box. Attempts are re-drawn until the instance
// validates, every site and network coordinate is unique on its axis, and --
// for small instances -- every diagram order and the farthest diagram build
// without a degenerate vertex.
inline Instance generate_random(int n, int c, unsigned long long seed,
                                const Box& box = Box{Rat(-12), Rat(-12), Rat(12), Rat(12)}) {
  if (n < 2) throw std::invalid_argument("need at least two sites");
  if (c < 0 || c % 2 != 0) throw std::invalid_argument("network vertex count must be even");

  long xlo = detail::rat_floor_long(box.x0) + 2, xhi = detail::rat_floor_long(box.x1) - 2;
  long ylo = detail::rat_floor_long(box.y0) + 2, yhi = detail::rat_floor_long(box.y1) - 2;
  if (xhi - xlo < 6 || yhi - ylo < 6) throw std::invalid_argument("box too small");

  detail::Lcg rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Instance inst;
    inst.box = box;
    inst.net.nu = Rat(rng.next(2, 5));
    std::set<Rat> used_x, used_y;

    int tries = 0;
    while (static_cast<int>(inst.net.edges.size()) < c / 2 && tries < 256) {
      ++tries;
      bool horiz = rng.next(0, 1) == 1;
      long len = rng.next(2, 6);
      long ax = rng.next(xlo, xhi - (horiz ? len : 0));
      long ay = rng.next(ylo, yhi - (horiz ? 0 : len));
      Seg s{pt(ax, ay), horiz ? pt(ax + len, ay) : pt(ax, ay + len)};
      std::vector<Rat> claim_x{s.a.x}, claim_y{s.a.y};
      if (horiz)
        claim_x.push_back(s.b.x);
      else
        claim_y.push_back(s.b.y);
      bool clash = false;
      for (const Rat& v : claim_x) clash = clash || used_x.count(v) > 0;
      for (const Rat& v : claim_y) clash = clash || used_y.count(v) > 0;
      for (const Seg& t : inst.net.edges)
        clash = clash || seg_intersect(s, t).kind != SegIntersection::None;
      if (clash) continue;
      used_x.insert(claim_x.begin(), claim_x.end());
      used_y.insert(claim_y.begin(), claim_y.end());
      inst.net.edges.push_back(s);
    }
    if (static_cast<int>(inst.net.edges.size()) < c / 2) continue;

    tries = 0;
    while (static_cast<int>(inst.sites.size()) < n && tries < 256) {
      ++tries;
      Point p{rat(rng.next(4 * xlo, 4 * xhi), 4), rat(rng.next(4 * ylo, 4 * yhi), 4)};
      if (used_x.count(p.x) || used_y.count(p.y)) continue;
      used_x.insert(p.x);
      used_y.insert(p.y);
      inst.sites.push_back(p);
    }
    if (static_cast<int>(inst.sites.size()) < n) continue;

    if (!validate_instance(inst).ok) continue;
    if (n <= 8 && c <= 12) {
      try {
        SpmCache cache = build_spm_cache(inst);
        OrderKDiagram d = compute_first_order(inst, &cache);
        for (int k = 2; k <= n - 1; ++k) d = compute_next_order(d, inst, &cache);
        compute_farthest_dc(inst, &cache);
      } catch (const DegeneracyError&) {
        continue;
      }
    }
    return inst;
  }
  throw std::runtime_error("random instance generation failed after 64 attempts");
}

struct EquivalenceReport {
  int samples = 0;     // counted comparisons
  int mismatches = 0;  // diagram label differs from the oracle label
  int degenerate = 0;  // skipped: the oracle ranking ties across position k
  Point first_point{};                        // earliest disagreeing sample
  std::vector<int> first_diagram, first_oracle;  // its two labels
  bool ok() const { return mismatches == 0; }
};

// Procedure: check_equivalence
// Samples points in the box and compares the diagram's face label against the
// independent oracle. Points whose ranking ties across the k-th position lie
// on diagram boundaries; they are counted as degenerate and resampled.
inline EquivalenceReport check_equivalence(const Instance& inst, const OrderKDiagram& d,
                                           int samples, unsigned long long seed = 1) {
  detail::Lcg rng(seed);
  EquivalenceReport rep;
  const long grid = 4096;
  for (int guard = 0; rep.samples < samples && guard < 64 * samples; ++guard) {
    Point x{inst.box.x0 + (inst.box.x1 - inst.box.x0) * rat(rng.next(1, grid - 1), grid),
            inst.box.y0 + (inst.box.y1 - inst.box.y0) * rat(rng.next(1, grid - 1), grid)};
    OracleLabel ol = oracle_classify(x, inst, d.order);
    if (ol.degenerate) {
      ++rep.degenerate;
      continue;
    }
    ++rep.samples;
    int f = d.sub.face_at(x);
    const std::vector<int>& got = d.sub.face[static_cast<size_t>(f)].label.ids;
    if (got != ol.sites) {
      if (rep.mismatches == 0) {
        rep.first_point = x;
        rep.first_diagram = got;
        rep.first_oracle = ol.sites;
      }
      ++rep.mismatches;
    }
  }
  return rep;
}

inline EquivalenceReport check_equivalence(const Instance& inst, int k, int samples,
                                           unsigned long long seed = 1) {
  return check_equivalence(inst, compute_kth_order(inst, k), samples, seed);
}

struct BoundRow {
  int n = 0, k = 0, c = 0;
  int mixed = 0;     // mixed vertices in the order-k diagram
  int segments = 0;  // straight segments totaled over all diagram edges
  bool lower_ok = true, upper_ok = true;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  int upper_constant = 8;
  bool lower_ok = true;  // worst-case rows: 2*segments >= (k-1)(c-6)
  bool upper_ok = true;  // every row: mixed <= C (n + k c)
};

// Procedure: bound_report
// Computes the order-k diagram of each family member and tabulates growth
// observables: mixed vertices against the C(n + kc) ceiling and, for the
// worst-case family, the ring-driven floor on total segment counts.
inline BoundReport bound_report(const std::vector<Instance>& family, int k,
                                bool worst_case_family, int upper_constant = 8) {
  BoundReport rep;
  rep.upper_constant = upper_constant;
  for (const Instance& inst : family) {
    SpmCache cache = build_spm_cache(inst);
    OrderKDiagram d = compute_first_order(inst, &cache);
    for (int j = 2; j <= k; ++j) d = compute_next_order(d, inst, &cache);
    StatsReport st = stats(d, inst, &cache);
    BoundRow row;
    row.n = static_cast<int>(inst.sites.size());
    row.k = k;
    row.c = static_cast<int>(network_vertices(inst.net).size());
    row.mixed = st.mixed_count;
    row.segments = std::accumulate(st.edge_segments.begin(), st.edge_segments.end(), 0);
    row.upper_ok = row.mixed <= upper_constant * (row.n + k * row.c);
    if (worst_case_family) row.lower_ok = 2 * row.segments >= (k - 1) * (row.c - 6);
    rep.lower_ok = rep.lower_ok && row.lower_ok;
    rep.upper_ok = rep.upper_ok && row.upper_ok;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace cityvor
