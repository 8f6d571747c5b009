#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <iterator>
#include <set>
#include <vector>

#include "cityvor/diagrams.hpp"

using namespace cityvor;

namespace {

Box box12() { return Box{Rat(-12), Rat(-12), Rat(12), Rat(12)}; }

// Deterministic pseudo-random rational points, strictly inside the box.
struct PointStream {
  unsigned long long state = 0x5bd1e9955bd1e995ULL;
  long next_int(long lo, long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
    return lo + static_cast<long>((state >> 33) % span);
  }
  Point next_point() {
    return Point{rat(next_int(-47, 47), 4), rat(next_int(-47, 47), 4)};
  }
};

// Structural soundness of a diagram: exact label shape on every bounded
// face, a perfect area partition, and side labels differing by one site
// across every interior edge.
void check_diagram_invariants(const OrderKDiagram& d, int n) {
  const PlanarSubdivision& sub = d.sub;
  REQUIRE(sub.euler_ok());
  Rat area = 0;
  int unbounded = 0;
  for (size_t f = 0; f < sub.face.size(); ++f) {
    if (sub.face[f].unbounded) {
      ++unbounded;
      continue;
    }
    const std::vector<int>& ids = sub.face[f].label.ids;
    REQUIRE(static_cast<int>(ids.size()) == d.order);
    REQUIRE(std::is_sorted(ids.begin(), ids.end()));
    REQUIRE(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    REQUIRE(ids.front() >= 0);
    REQUIRE(ids.back() < n);
    area += sub.face_area2(static_cast<int>(f));
  }
  REQUIRE(unbounded == 1);
  REQUIRE(area == 2 * (sub.box.x1 - sub.box.x0) * (sub.box.y1 - sub.box.y0));

  for (int e = 0; e < sub.edge_count(); ++e) {
    const auto& fa = sub.face[sub.half[2 * e].face];
    const auto& fb = sub.face[sub.half[2 * e + 1].face];
    if (fa.unbounded || fb.unbounded) continue;
    REQUIRE(fa.label.ids != fb.label.ids);
    std::vector<int> a_only, b_only;
    std::set_difference(fa.label.ids.begin(), fa.label.ids.end(), fb.label.ids.begin(),
                        fb.label.ids.end(), std::back_inserter(a_only));
    std::set_difference(fb.label.ids.begin(), fb.label.ids.end(), fa.label.ids.begin(),
                        fa.label.ids.end(), std::back_inserter(b_only));
    REQUIRE(a_only.size() == 1);
    REQUIRE(b_only.size() == 1);
  }
}

std::set<std::vector<int>> bounded_labels(const OrderKDiagram& d) {
  std::set<std::vector<int>> out;
  for (const auto& f : d.sub.face)
    if (!f.unbounded) out.insert(f.label.ids);
  return out;
}

}  // namespace

TEST_CASE("two sites without a network split the box at the equidistant line") {
  Instance inst{{pt(0, 0), pt(4, 0)}, TransportNetwork{{}, Rat(2)}, box12()};
  OrderKDiagram d = compute_first_order(inst);
  check_diagram_invariants(d, 2);

  REQUIRE(bounded_labels(d) == std::set<std::vector<int>>{{0}, {1}});
  std::vector<DiagramEdge> edges = diagram_edges(d);
  REQUIRE(edges.size() == 1);
  REQUIRE(edges[0].site_p == 0);
  REQUIRE(edges[0].site_q == 1);
  REQUIRE_FALSE(edges[0].closed);
  REQUIRE(polyline_segment_count(edges[0].poly, false) == 1);
  for (const Point& v : edges[0].poly) REQUIRE(v.x == Rat(2));
  REQUIRE(voronoi_vertices(d).empty());

  SpmCache cache = build_spm_cache(inst);
  REQUIRE(find_mixed_vertices(d, cache.by_site).empty());

  StatsReport rep = stats(d, inst, &cache);
  REQUIRE(rep.order == 1);
  REQUIRE(rep.site_count == 2);
  REQUIRE(rep.vertex_count == 0);
  REQUIRE(rep.edge_count == 1);
  REQUIRE(rep.face_count == 2);
  REQUIRE(rep.mixed_count == 0);
  REQUIRE(rep.edge_segments == std::vector<int>{1});
  REQUIRE(rep.edge_pieces == std::vector<int>{1});
}

TEST_CASE("a single site owns the whole box") {
  Instance inst{{pt(1, 1)}, TransportNetwork{{}, Rat(2)}, box12()};
  OrderKDiagram d = compute_first_order(inst);
  REQUIRE(bounded_labels(d) == std::set<std::vector<int>>{{0}});
  REQUIRE(diagram_edges(d).empty());
  REQUIRE_THROWS_AS(compute_kth_order(inst, 1), std::invalid_argument);
}

TEST_CASE("three collinear sites keep one second-order boundary") {
  Instance inst{{pt(0, 0), pt(2, 0), pt(6, 0)}, TransportNetwork{{}, Rat(2)}, box12()};

  OrderKDiagram d1 = compute_first_order(inst);
  check_diagram_invariants(d1, 3);
  REQUIRE(bounded_labels(d1) == std::set<std::vector<int>>{{0}, {1}, {2}});
  {
    std::vector<DiagramEdge> edges = diagram_edges(d1);
    REQUIRE(edges.size() == 2);
    std::set<Rat> xs;
    for (const auto& de : edges) {
      for (const Point& v : de.poly) xs.insert(v.x);
      REQUIRE(polyline_segment_count(de.poly, de.closed) == 1);
    }
    REQUIRE(xs == std::set<Rat>{Rat(1), Rat(4)});
  }

  OrderKDiagram d2 = compute_next_order(d1, inst);
  check_diagram_invariants(d2, 3);
  REQUIRE(d2.order == 2);
  REQUIRE(bounded_labels(d2) == std::set<std::vector<int>>{{0, 1}, {1, 2}});
  {
    std::vector<DiagramEdge> edges = diagram_edges(d2);
    REQUIRE(edges.size() == 1);
    for (const Point& v : edges[0].poly) REQUIRE(v.x == Rat(3));
    REQUIRE(edges[0].site_p == 0);
    REQUIRE(edges[0].site_q == 2);
  }

  // Orders beyond n - 1 are rejected.
  REQUIRE_THROWS_AS(compute_next_order(d2, inst), std::invalid_argument);
  REQUIRE_THROWS_AS(compute_kth_order(inst, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(compute_kth_order(inst, 0), std::invalid_argument);

  // The one-shot build agrees with the chained one.
  OrderKDiagram again = compute_kth_order(inst, 2);
  REQUIRE(bounded_labels(again) == bounded_labels(d2));
  REQUIRE(again.sub.vert == d2.sub.vert);
}

TEST_CASE("four sites tying at a point raise a degeneracy error") {
  Instance inst{{pt(2, 0), pt(-2, 0), pt(0, 2), pt(0, -2)},
                TransportNetwork{{}, Rat(2)},
                box12()};
  try {
    compute_first_order(inst);
    FAIL("expected a degeneracy error");
  } catch (const DegeneracyError& err) {
    REQUIRE(err.location == pt(0, 0));
    REQUIRE(err.sites == std::vector<int>{0, 1, 2, 3});
    REQUIRE(err.degree >= 4);
  }
}

TEST_CASE("invalid instances are rejected with reasons") {
  TransportNetwork net{{}, Rat(2)};
  REQUIRE_FALSE(validate_instance({{}, net, box12()}).ok);
  REQUIRE_FALSE(validate_instance({{pt(0, 0), pt(0, 0)}, net, box12()}).ok);
  REQUIRE_FALSE(validate_instance({{pt(20, 0)}, net, box12()}).ok);
  REQUIRE_FALSE(
      validate_instance({{pt(0, 0)}, TransportNetwork{{Seg{pt(0, 20), pt(5, 20)}}, Rat(2)},
                         box12()})
          .ok);
  REQUIRE_FALSE(
      validate_instance({{pt(0, 0)}, TransportNetwork{{Seg{pt(0, 1), pt(5, 1)}}, Rat(1)},
                         box12()})
          .ok);
  REQUIRE(validate_instance({{pt(0, 0)}, net, box12()}).ok);
  REQUIRE_THROWS_AS(compute_first_order({{pt(0, 0), pt(0, 0)}, net, box12()}),
                    std::invalid_argument);
}

TEST_CASE("the straddling pair's first-order edge carries four mixed vertices") {
  TransportNetwork net{{Seg{pt(-5, 1), pt(5, 1)}, Seg{pt(-4, -1), pt(5, -1)}}, Rat(2)};
  Instance inst{{pt(-4, 3), pt(1, -2)}, net, box12()};

  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = compute_first_order(inst, &cache);
  check_diagram_invariants(d, 2);
  REQUIRE(bounded_labels(d) == std::set<std::vector<int>>{{0}, {1}});

  std::vector<DiagramEdge> edges = diagram_edges(d);
  REQUIRE(edges.size() == 1);
  REQUIRE(polyline_segment_count(edges[0].poly, edges[0].closed) == 6);
  REQUIRE(voronoi_vertices(d).empty());

  std::vector<MixedVertex> mixed = find_mixed_vertices(d, cache.by_site);
  REQUIRE(mixed.size() == 4);
  REQUIRE(mixed[0].location == pt(-5, -1));
  REQUIRE(mixed[0].changing == 0);
  REQUIRE(mixed[1].location == Point{Rat(-4), rat(-3, 4)});
  REQUIRE(mixed[1].changing == 1);
  REQUIRE(mixed[2].location == Point{rat(-1, 2), rat(15, 8)});
  REQUIRE(mixed[2].changing == 0);
  REQUIRE(mixed[3].location == pt(1, 3));
  REQUIRE(mixed[3].changing == 1);
  for (const MixedVertex& m : mixed) {
    REQUIRE(m.site_p == 0);
    REQUIRE(m.site_q == 1);
    REQUIRE(m.interior_for(m.changing));
    REQUIRE_FALSE(m.interior_for(m.changing == 0 ? 1 : 0));
  }

  StatsReport rep = stats(d, inst, &cache);
  REQUIRE(rep.vertex_count == 0);
  REQUIRE(rep.edge_count == 1);
  REQUIRE(rep.face_count == 2);
  REQUIRE(rep.mixed_count == 4);
  REQUIRE(rep.edge_pieces == std::vector<int>{5});
  REQUIRE(rep.edge_mixed == std::vector<int>{4});
  REQUIRE(rep.edge_segments == std::vector<int>{6});
}

TEST_CASE("every order of a five-site instance matches direct distance ranking") {
  TransportNetwork net{{Seg{pt(-6, 2), pt(4, 2)}, Seg{pt(4, 2), pt(4, -6)}}, Rat(2)};
  Instance inst{{Point{Rat(-7), rat(13, 4)}, Point{Rat(-2), rat(-19, 4)},
                 Point{rat(1, 2), rat(9, 4)}, Point{Rat(5), rat(-1, 4)},
                 Point{rat(17, 2), rat(23, 4)}},
                net, box12()};
  const int n = 5;

  SpmCache cache = build_spm_cache(inst);
  std::vector<OrderKDiagram> diagrams;
  diagrams.push_back(compute_first_order(inst, &cache));
  while (diagrams.back().order < n - 1)
    diagrams.push_back(compute_next_order(diagrams.back(), inst, &cache));
  for (const OrderKDiagram& d : diagrams) check_diagram_invariants(d, n);

  PointStream rng;
  int checked = 0;
  for (int probe = 0; probe < 120; ++probe) {
    Point r = rng.next_point();

    std::vector<std::pair<Rat, int>> ranked;
    for (int i = 0; i < n; ++i) ranked.push_back({city_distance(inst.sites[i], r, net), i});
    std::sort(ranked.begin(), ranked.end());

    for (const OrderKDiagram& d : diagrams) {
      int k = d.order;
      if (ranked[k - 1].first == ranked[k].first) continue;  // rank tie: skip
      std::vector<int> expect;
      for (int i = 0; i < k; ++i) expect.push_back(ranked[i].second);
      std::sort(expect.begin(), expect.end());
      REQUIRE(d.sub.face[d.sub.face_at(r)].label.ids == expect);
      ++checked;
    }
  }
  REQUIRE(checked >= 400);
}
