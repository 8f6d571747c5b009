#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "cityvor/verify.hpp"

using namespace cityvor;

namespace {

Instance collinear_three() {
  Instance inst;
  inst.sites = {pt(0, 0), pt(2, 0), pt(6, 0)};
  inst.net.nu = rat(2);
  inst.box = Box{Rat(-12), Rat(-12), Rat(12), Rat(12)};
  return inst;
}

}  // namespace

TEST_CASE("the oracle ranks sites by plain travel time") {
  Instance two;
  two.sites = {pt(0, 0), pt(4, 0)};
  two.net.nu = rat(2);
  two.box = Box{Rat(-12), Rat(-12), Rat(12), Rat(12)};
  OracleLabel a = oracle_classify(Point{Rat(0), Rat(0)}, two, 1);
  REQUIRE(a.sites == std::vector<int>{0});
  REQUIRE(a.dist == std::vector<Rat>{Rat(0)});
  REQUIRE_FALSE(a.degenerate);

  Instance three = collinear_three();
  OracleLabel b = oracle_classify(Point{rat(7, 2), rat(1, 4)}, three, 2);
  REQUIRE(b.sites == std::vector<int>{1, 2});
  REQUIRE(b.dist == std::vector<Rat>{rat(7, 4), rat(11, 4)});
  REQUIRE_FALSE(b.degenerate);
  OracleLabel c = oracle_classify(Point{rat(7, 2), rat(1, 4)}, three, 1);
  REQUIRE(c.sites == std::vector<int>{1});
}

TEST_CASE("a stress-instance point ranks everything but its farthest neighbor") {
  WorstCaseParams wp;
  wp.k = 3;
  wp.c = 18;
  wp.n = 12;
  Instance inst = generate_worst_case(wp);
  OracleLabel ol = oracle_classify(Point{Rat(1), Rat(-1)}, inst, 3);
  REQUIRE(ol.sites == std::vector<int>{0, 2, 3});
  REQUIRE_FALSE(ol.degenerate);
}

TEST_CASE("an exact tie across the cutoff rank is flagged degenerate") {
  Instance three = collinear_three();
  // x = 4 is equidistant (in plain L1, no network reach matters on the axis)
  // from sites 1 and 2, which straddle rank 1/2.
  OracleLabel t = oracle_classify(Point{Rat(4), Rat(0)}, three, 1);
  REQUIRE(t.degenerate);
  OracleLabel u = oracle_classify(Point{Rat(4), Rat(0)}, three, 2);
  REQUIRE_FALSE(u.degenerate);
}

TEST_CASE("the stress generator realizes the requested shape") {
  WorstCaseParams wp;
  wp.k = 3;
  wp.c = 18;
  wp.n = 12;
  Instance inst = generate_worst_case(wp);
  REQUIRE(validate_instance(inst).ok);
  REQUIRE(inst.sites.size() == 12);
  REQUIRE(network_vertices(inst.net).size() == 18);
  // cluster sites first, all on the unit half-square, walking cost 1/2 + 1 to
  // the innermost ring from every one of them
  for (int i = 0; i <= wp.k; ++i) {
    Rat dx = rat_abs(inst.sites[static_cast<size_t>(i)].x);
    Rat dy = rat_abs(inst.sites[static_cast<size_t>(i)].y);
    REQUIRE(rat_max(dx, dy) == rat(1, 2));
  }
  // remaining sites far to the left of the ring area
  for (size_t i = 4; i < 12; ++i) REQUIRE(inst.sites[i].x < Rat(-100));

  WorstCaseParams tight;
  tight.k = 2;
  tight.c = 10;
  tight.n = 3;
  Instance small = generate_worst_case(tight);
  REQUIRE(validate_instance(small).ok);
  REQUIRE(small.sites.size() == 3);
  REQUIRE(network_vertices(small.net).size() == 10);

  WorstCaseParams bad = wp;
  bad.c = 12;
  REQUIRE_THROWS_AS(generate_worst_case(bad), std::invalid_argument);
  bad = wp;
  bad.k = 1;
  REQUIRE_THROWS_AS(generate_worst_case(bad), std::invalid_argument);
  bad = wp;
  bad.n = 3;
  REQUIRE_THROWS_AS(generate_worst_case(bad), std::invalid_argument);
  bad = wp;
  bad.nu = rat(1, 2);
  REQUIRE_THROWS_AS(generate_worst_case(bad), std::invalid_argument);
}

TEST_CASE("consecutive stress regions stay separated by long boundaries") {
  WorstCaseParams wp;
  wp.k = 3;
  wp.c = 10;
  wp.n = 4;
  Instance inst = generate_worst_case(wp);
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = compute_first_order(inst, &cache);
  for (int j = 2; j <= wp.k; ++j) d = compute_next_order(d, inst, &cache);
  std::vector<int> segs = worst_case_common_edges(d, wp.k);
  REQUIRE(segs.size() == 3);
  int need = 2 * ((wp.c - 2) / 4 - 1) + 1;
  for (int s : segs) REQUIRE(s >= need);
}

TEST_CASE("random instances are deterministic and valid") {
  Instance a = generate_random(5, 8, 7);
  Instance b = generate_random(5, 8, 7);
  REQUIRE(a.sites.size() == 5);
  REQUIRE(a.net.edges.size() == 4);
  REQUIRE(validate_instance(a).ok);
  REQUIRE(a.net.nu == b.net.nu);
  REQUIRE(a.sites.size() == b.sites.size());
  for (size_t i = 0; i < a.sites.size(); ++i) {
    REQUIRE(a.sites[i].x == b.sites[i].x);
    REQUIRE(a.sites[i].y == b.sites[i].y);
  }
  for (size_t i = 0; i < a.net.edges.size(); ++i) {
    REQUIRE(a.net.edges[i].a.x == b.net.edges[i].a.x);
    REQUIRE(a.net.edges[i].b.y == b.net.edges[i].b.y);
  }

  Instance c = generate_random(2, 0, 3);
  REQUIRE(c.sites.size() == 2);
  REQUIRE(c.net.edges.empty());
  REQUIRE(validate_instance(c).ok);

  REQUIRE_THROWS_AS(generate_random(1, 0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(generate_random(3, 5, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(generate_random(3, 4, 1, Box{Rat(0), Rat(0), Rat(4), Rat(4)}),
                    std::invalid_argument);
}

TEST_CASE("diagram labels agree with the oracle on random instances") {
  for (unsigned long long seed : {11ULL, 23ULL}) {
    Instance inst = generate_random(4, 6, seed);
    SpmCache cache = build_spm_cache(inst);
    OrderKDiagram d = compute_first_order(inst, &cache);
    for (int k = 1; k <= 3; ++k) {
      if (k > 1) d = compute_next_order(d, inst, &cache);
      EquivalenceReport rep = check_equivalence(inst, d, 60, seed + k);
      REQUIRE(rep.samples == 60);
      REQUIRE(rep.mismatches == 0);
    }
  }
}

TEST_CASE("the divide and conquer diagram agrees with the oracle") {
  Instance inst = generate_random(5, 4, 19);
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram fd = compute_farthest_dc(inst, &cache);
  EquivalenceReport rep = check_equivalence(inst, fd, 60, 5);
  REQUIRE(rep.samples == 60);
  REQUIRE(rep.mismatches == 0);
}

TEST_CASE("without a network the labels match plain L1 ranking") {
  Instance inst = generate_random(5, 0, 41);
  REQUIRE(inst.net.edges.empty());
  for (int k = 1; k <= 4; ++k) {
    EquivalenceReport rep = check_equivalence(inst, k, 50, 13 + k);
    REQUIRE(rep.samples == 50);
    REQUIRE(rep.mismatches == 0);
  }
}

TEST_CASE("growth observables respect both bounds") {
  std::vector<Instance> family;
  for (int c : {10, 14, 18}) {
    WorstCaseParams wp;
    wp.k = 3;
    wp.c = c;
    wp.n = 4;
    family.push_back(generate_worst_case(wp));
  }
  BoundReport rep = bound_report(family, 3, true);
  REQUIRE(rep.rows.size() == 3);
  REQUIRE(rep.lower_ok);
  REQUIRE(rep.upper_ok);
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    REQUIRE(rep.rows[i].c == 10 + 4 * static_cast<int>(i));
    REQUIRE(2 * rep.rows[i].segments >= 2 * (rep.rows[i].c - 6));
  }

  std::vector<Instance> plain;
  for (int n : {2, 4, 6}) plain.push_back(generate_random(n, 0, 29 + n));
  BoundReport flat = bound_report(plain, 1, false);
  REQUIRE(flat.upper_ok);
  for (const BoundRow& row : flat.rows) REQUIRE(row.mixed == 0);

  std::vector<Instance> random_family;
  for (unsigned long long seed : {31ULL, 37ULL}) random_family.push_back(generate_random(4, 6, seed));
  BoundReport rr = bound_report(random_family, 2, false);
  REQUIRE(rr.upper_ok);
}
