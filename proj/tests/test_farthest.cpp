#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <vector>

#include "cityvor/diagrams.hpp"
#include "cityvor/farthest.hpp"

using namespace cityvor;

namespace {

Box box12() { return Box{Rat(-12), Rat(-12), Rat(12), Rat(12)}; }

// Structural soundness shared with the order-k tests: exact label shape on
// every bounded face, a perfect area partition, side labels differing by one
// site across every interior edge.
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

using EdgeMap =
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<PolyLine>>;

EdgeMap canonical_edges(const OrderKDiagram& d) {
  EdgeMap m;
  for (const DiagramEdge& de : diagram_edges(d))
    m[{de.label_a, de.label_b}].push_back(canonical_polyline(de.poly, de.closed));
  for (auto& [key, chains] : m) std::sort(chains.begin(), chains.end());
  return m;
}

std::map<std::vector<int>, Rat> label_areas(const OrderKDiagram& d) {
  std::map<std::vector<int>, Rat> m;
  for (size_t f = 0; f < d.sub.face.size(); ++f)
    if (!d.sub.face[f].unbounded)
      m[d.sub.face[f].label.ids] += d.sub.face_area2(static_cast<int>(f));
  return m;
}

// Two diagrams describe the same partition: identical chain geometry for
// every label pair, identical area per label, and matching labels at each
// other's face interiors.
void require_same_diagram(const OrderKDiagram& a, const OrderKDiagram& b) {
  REQUIRE(a.order == b.order);
  REQUIRE(canonical_edges(a) == canonical_edges(b));
  REQUIRE(label_areas(a) == label_areas(b));
  for (size_t f = 0; f < a.sub.face.size(); ++f) {
    if (a.sub.face[f].unbounded) continue;
    Point x = a.sub.interior_point(static_cast<int>(f));
    REQUIRE(b.sub.face[b.sub.face_at(x)].label.ids == a.sub.face[f].label.ids);
  }
}

}  // namespace

TEST_CASE("the farthest diagram of two sites mirrors the nearest diagram") {
  TransportNetwork net{{Seg{pt(-5, 1), pt(5, 1)}, Seg{pt(-4, -1), pt(5, -1)}}, Rat(2)};
  Instance inst{{pt(-4, 3), pt(1, -2)}, net, box12()};
  OrderKDiagram fd = compute_farthest_dc(inst);
  check_diagram_invariants(fd, 2);
  REQUIRE(fd.order == 1);
  // With two sites, the farthest partition complements itself back into the
  // nearest one: each face is labeled by the site that is not farthest.
  OrderKDiagram d1 = compute_first_order(inst);
  require_same_diagram(fd, d1);
}

TEST_CASE("three collinear sites split farthest ownership at the middle bisector") {
  Instance inst{{pt(0, 0), pt(2, 0), pt(6, 0)}, TransportNetwork{{}, Rat(2)}, box12()};
  OrderKDiagram fd = compute_farthest_dc(inst);
  check_diagram_invariants(fd, 3);
  REQUIRE(fd.order == 2);

  std::set<std::vector<int>> labels;
  for (const auto& f : fd.sub.face)
    if (!f.unbounded) labels.insert(f.label.ids);
  REQUIRE(labels == std::set<std::vector<int>>{{0, 1}, {1, 2}});

  std::vector<DiagramEdge> edges = diagram_edges(fd);
  REQUIRE(edges.size() == 1);
  REQUIRE_FALSE(edges[0].closed);
  for (const Point& p : edges[0].poly) REQUIRE(p.x == Rat(3));

  require_same_diagram(fd, compute_kth_order(inst, 2));
}

TEST_CASE("divide and conquer agrees with the iterative tower on a network instance") {
  TransportNetwork net{{Seg{pt(-6, 2), pt(4, 2)}, Seg{pt(4, 2), pt(4, -6)}}, Rat(2)};
  Instance inst{{Point{Rat(-7), rat(13, 4)}, Point{Rat(-2), rat(-19, 4)},
                 Point{rat(1, 2), rat(9, 4)}, Point{Rat(5), rat(-1, 4)},
                 Point{rat(17, 2), rat(23, 4)}},
                net,
                box12()};
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram fd = compute_farthest_dc(inst, &cache);
  check_diagram_invariants(fd, 5);
  REQUIRE(fd.order == 4);
  require_same_diagram(fd, compute_kth_order(inst, 4));
}

TEST_CASE("an even split of six sites matches the iterative result") {
  Instance inst{{Point{Rat(-9), rat(-31, 4)}, Point{rat(-15, 2), Rat(6)},
                 Point{rat(-5, 4), rat(3, 2)}, Point{Rat(2), Rat(-8)},
                 Point{rat(27, 4), Rat(9)}, Point{Rat(10), rat(-7, 4)}},
                TransportNetwork{{}, Rat(2)},
                box12()};
  OrderKDiagram fd = compute_farthest_dc(inst);
  check_diagram_invariants(fd, 6);
  REQUIRE(fd.order == 5);
  require_same_diagram(fd, compute_kth_order(inst, 5));
}

TEST_CASE("a farthest diagram needs at least two sites") {
  Instance one{{pt(0, 0)}, TransportNetwork{{}, Rat(2)}, box12()};
  REQUIRE_THROWS_AS(compute_farthest_dc(one), std::invalid_argument);
  Instance dup{{pt(0, 0), pt(0, 0)}, TransportNetwork{{}, Rat(2)}, box12()};
  REQUIRE_THROWS_AS(compute_farthest_dc(dup), std::invalid_argument);
}
