#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "cityvor/io.hpp"

using namespace cityvor;

namespace {

Instance two_site_instance() {
  Instance inst;
  inst.sites = {pt(0, 0), pt(4, 0)};
  inst.net.nu = 2;
  inst.box = Box{Rat(-10), Rat(-10), Rat(10), Rat(10)};
  return inst;
}

// Deterministic sample points strictly inside a box.
struct SampleStream {
  unsigned long long state = 0x2545f4914f6cdd1dULL;
  long next_int(long lo, long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((state >> 33) % static_cast<unsigned long long>(hi - lo + 1));
  }
  Point in_box(const Box& b) {
    long g = 4096;
    return Point{b.x0 + (b.x1 - b.x0) * rat(next_int(1, g - 1), g),
                 b.y0 + (b.y1 - b.y0) * rat(next_int(1, g - 1), g)};
  }
};

}  // namespace

TEST_CASE("instance files round-trip exactly") {
  Instance inst = generate_random(5, 8, 7);
  std::string text = instance_text(inst);
  Instance back = parse_instance(text);

  REQUIRE(back.sites == inst.sites);
  REQUIRE(back.net.nu == inst.net.nu);
  REQUIRE(back.net.edges.size() == inst.net.edges.size());
  for (size_t i = 0; i < inst.net.edges.size(); ++i) {
    REQUIRE(back.net.edges[i].a == inst.net.edges[i].a);
    REQUIRE(back.net.edges[i].b == inst.net.edges[i].b);
  }
  REQUIRE(back.box.x0 == inst.box.x0);
  REQUIRE(back.box.y1 == inst.box.y1);
  REQUIRE(instance_text(back) == text);
}

TEST_CASE("instance parsing rejects malformed documents") {
  REQUIRE_THROWS_AS(parse_instance("{"), IoError);
  REQUIRE_THROWS_AS(parse_instance("[]"), IoError);
  REQUIRE_THROWS_AS(parse_instance(R"({"nu": "1/0", "sites": [["0","0"]],
    "network_vertices": [], "network_edges": []})"),
                    IoError);
  REQUIRE_THROWS_AS(parse_instance(R"({"nu": 2.5, "sites": [["0","0"]],
    "network_vertices": [], "network_edges": []})"),
                    IoError);
  REQUIRE_THROWS_AS(parse_instance(R"({"nu": "2", "network_vertices": [], "network_edges": []})"),
                    IoError);
  REQUIRE_THROWS_AS(parse_instance(R"({"nu": "2", "sites": [["0","0"]],
    "network_vertices": [["0","1"]], "network_edges": [[0, 1]]})"),
                    IoError);

  // Exact forms that must be accepted: integers, decimals, fractions.
  Instance ok = parse_instance(R"({"nu": 3, "sites": [["2.5", "-4/7"], [1, 2]],
    "network_vertices": [], "network_edges": []})");
  REQUIRE(ok.net.nu == 3);
  REQUIRE(ok.sites[0].x == rat(5, 2));
  REQUIRE(ok.sites[0].y == rat(-4, 7));
}

TEST_CASE("a missing bounding box is derived from the geometry") {
  Instance inst = parse_instance(R"({"nu": "2", "sites": [["0","0"], ["4","0"]],
    "network_vertices": [], "network_edges": []})");
  REQUIRE(inst.box.x0 == -4);
  REQUIRE(inst.box.y0 == -4);
  REQUIRE(inst.box.x1 == 8);
  REQUIRE(inst.box.y1 == 4);
  REQUIRE(validate_instance(inst).ok);
}

TEST_CASE("a two-site instance yields one straight boundary") {
  Instance inst = two_site_instance();
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = compute_first_order(inst, &cache);
  DiagramDoc doc = make_doc(d, inst, &cache);

  REQUIRE(doc.order == 1);
  REQUIRE(doc.vertices.empty());
  REQUIRE(doc.edges.size() == 1);
  REQUIRE(doc.edges[0].label_a == std::vector<int>{0});
  REQUIRE(doc.edges[0].label_b == std::vector<int>{1});
  REQUIRE(doc.edges[0].poly == PolyLine{pt(2, -10), pt(2, 10)});
  REQUIRE(doc.edges[0].breakpoints.empty());
  REQUIRE(doc.faces.size() == 2);
  REQUIRE(doc.faces[0].label == std::vector<int>{0});
  REQUIRE(doc.faces[0].unbounded);
  REQUIRE(doc.faces[1].unbounded);

  StatsReport st = stats(d, inst, &cache);
  Json j = stats_json(st, d);
  REQUIRE(j["vertices"] == 0);
  REQUIRE(j["edges"] == 1);
  REQUIRE(j["faces"] == 2);
  REQUIRE(j["mixed"] == 0);
  REQUIRE(j["min_common_edge_segments"] == 1);
}

TEST_CASE("diagram documents round-trip byte for byte") {
  Instance inst = generate_random(4, 6, 3);
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = compute_first_order(inst, &cache);
  d = compute_next_order(d, inst, &cache);

  DiagramDoc doc = make_doc(d, inst, &cache);
  std::string text = doc_text(doc);
  DiagramDoc back = doc_parse(text);
  REQUIRE(doc_text(back) == text);

  OrderKDiagram rebuilt = doc_rebuild(back);
  REQUIRE(rebuilt.order == 2);
  SampleStream pts;
  for (int t = 0; t < 60; ++t) {
    Point x = pts.in_box(inst.box);
    int fa = d.sub.face_at(x);
    int fb = rebuilt.sub.face_at(x);
    REQUIRE(d.sub.face[static_cast<size_t>(fa)].label.ids ==
            rebuilt.sub.face[static_cast<size_t>(fb)].label.ids);
  }
}

TEST_CASE("both farthest constructions serialize to identical bytes") {
  Instance inst = generate_random(4, 4, 5);
  SpmCache cache = build_spm_cache(inst);

  OrderKDiagram dc = compute_farthest_dc(inst, &cache);
  OrderKDiagram it = compute_first_order(inst, &cache);
  while (it.order < 3) it = compute_next_order(it, inst, &cache);

  REQUIRE(doc_text(make_doc(dc, inst, &cache)) == doc_text(make_doc(it, inst, &cache)));
}

TEST_CASE("corrupted diagram documents are caught") {
  Instance inst = two_site_instance();
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = compute_first_order(inst, &cache);
  DiagramDoc doc = make_doc(d, inst, &cache);

  SECTION("truncated text") {
    std::string text = doc_text(doc);
    REQUIRE_THROWS_AS(doc_parse(text.substr(0, text.size() / 2)), IoError);
  }
  SECTION("unsorted label") {
    Json j = Json::parse(doc_text(doc));
    j["faces"][0]["label"] = Json::array({1, 1});
    REQUIRE_THROWS_AS(doc_parse(j.dump()), IoError);
  }
  SECTION("representative point on a boundary") {
    DiagramDoc bad = doc;
    bad.faces[0].rep = pt(2, 0);  // lies on the dividing chain
    REQUIRE_THROWS_AS(doc_rebuild(bad), std::invalid_argument);
  }
  SECTION("two representatives in one face") {
    DiagramDoc bad = doc;
    bad.faces[1].rep = bad.faces[0].rep;
    REQUIRE_THROWS_AS(doc_rebuild(bad), std::invalid_argument);
  }
  SECTION("swapped labels survive parsing but fail the ranking check") {
    DiagramDoc bad = doc;
    std::swap(bad.faces[0].label, bad.faces[1].label);
    OrderKDiagram wrong = doc_rebuild(doc_parse(doc_text(bad)));
    EquivalenceReport rep = check_equivalence(inst, wrong, 40, 9);
    REQUIRE(rep.mismatches == rep.samples);
    REQUIRE(rep.first_diagram != rep.first_oracle);
  }
}

TEST_CASE("stress-instance statistics expose the consecutive-region minimum") {
  WorstCaseParams wp;
  wp.k = 2;
  wp.c = 10;
  wp.n = 3;
  Instance inst = generate_worst_case(wp);
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = compute_first_order(inst, &cache);
  d = compute_next_order(d, inst, &cache);

  StatsReport st = stats(d, inst, &cache);
  Json j = stats_json(st, d);
  REQUIRE(j.contains("min_common_edge_segments"));
  std::vector<int> wheel = worst_case_common_edges(d, 2);
  REQUIRE(j["min_common_edge_segments"] == *std::min_element(wheel.begin(), wheel.end()));
  REQUIRE(j["total_segments"].get<int>() >= 1);
}
