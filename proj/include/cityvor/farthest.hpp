#pragma once
// Farthest-site diagram by divide and conquer. Each half of the site set
// yields a sub-diagram whose faces know the winning needle of the farthest
// site; two halves merge along the curve where the maximum distances to the
// halves coincide. Faces carry needle-level labels during the recursion so
// every merge comparison is a single needle-against-needle analysis; the
// final diagram dissolves them into complement-of-farthest site sets,
// matching the top order of the nearest-site tower.

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cityvor/diagrams.hpp"

namespace cityvor {

namespace detail {

// Canonical winner among a needle_less-sorted pool: smallest distance, exact
// ties resolved by the pairwise ownership analysis in ascending pool order.
// Mirrors the envelope fold so different constructions break ties alike.
inline int canonical_pool_winner(const std::vector<Needle>& ns, const Rat& nu, const Point& r) {
  assert(!ns.empty());
  int w = 0;
  Rat best = needle_distance(ns[0], r, nu);
  std::vector<int> tied;
  for (int i = 1; i < static_cast<int>(ns.size()); ++i) {
    Rat d = needle_distance(ns[i], r, nu);
    if (d < best) {
      best = d;
      w = i;
      tied.clear();
    } else if (d == best) {
      tied.push_back(i);
    }
  }
  for (int u : tied) {
    if (u <= w) continue;
    PairAnalysis pa(ns[w], ns[u], nu);
    if (pa.classify(r) > 0) w = u;
  }
  return w;
}

struct GrowBox {
  bool init = false;
  Rat xlo, xhi, ylo, yhi;

  void grow(const Point& p) {
    if (!init) {
      xlo = xhi = p.x;
      ylo = yhi = p.y;
      init = true;
      return;
    }
    if (p.x < xlo) xlo = p.x;
    if (p.x > xhi) xhi = p.x;
    if (p.y < ylo) ylo = p.y;
    if (p.y > yhi) yhi = p.y;
  }
  void merge(const GrowBox& o) {
    if (!o.init) return;
    grow(Point{o.xlo, o.ylo});
    grow(Point{o.xhi, o.yhi});
  }
};

// Builds the farthest-site subdivision over a global needle table.
class FarthestBuilder {
 public:
  FarthestBuilder(const Instance& inst, const SpmCache& cache) : inst_(inst), cache_(cache) {
    assert(cache.by_site.size() == inst.sites.size() && "cache must be built for this instance");
    base_.push_back(0);
    for (const ShortestPathMap& spm : cache.by_site) {
      needles_.insert(needles_.end(), spm.needles().begin(), spm.needles().end());
      base_.push_back(static_cast<int>(needles_.size()));
    }
  }

  int site_of(int gid) const { return needles_[gid].site; }

  PlanarSubdivision build() {
    std::vector<int> all(inst_.sites.size());
    std::iota(all.begin(), all.end(), 0);
    return fv(all);
  }

 private:
  PlanarSubdivision fv(const std::vector<int>& sites) {
    if (sites.size() == 1) {
      const int s = sites[0];
      const int b = base_[s];
      std::vector<Needle> ns = cache_.by_site[s].needles();
      Envelope env(std::move(ns), inst_.net.nu, inst_.box,
                   [b](int w, const Needle&) { return b + w; });
      // The site's needles are already canonically sorted and duplicate-free,
      // so the envelope's internal order matches the global table slice.
      assert(static_cast<int>(env.needles().size()) == base_[s + 1] - base_[s]);
      return env.sub();
    }
    const size_t mid = sites.size() / 2;
    PlanarSubdivision a = fv(std::vector<int>(sites.begin(), sites.begin() + mid));
    PlanarSubdivision b = fv(std::vector<int>(sites.begin() + mid, sites.end()));
    return merge(a, b);
  }

  // The merge curve lives where the two halves' maximum distances coincide.
  // Within one overlay cell each half's distance is the single needle
  // function named by its label, so the candidate curve is that pair's
  // ownership boundary clipped to where the cell pair occurs.
  PlanarSubdivision merge(const PlanarSubdivision& a, const PlanarSubdivision& b) {
    PlanarSubdivision ov = overlay(a, b);
    std::map<std::pair<int, int>, GrowBox> pairs;
    for (size_t f = 0; f < ov.face.size(); ++f) {
      if (ov.face[f].unbounded) continue;
      int na = ov.face[f].label.ids.at(0);
      int nb = ov.face[f].label2.ids.at(0);
      std::pair<int, int> key{std::min(na, nb), std::max(na, nb)};
      GrowBox bb;
      for (const auto& cyc : ov.face_cycles(static_cast<int>(f)))
        for (const Point& p : cyc) bb.grow(p);
      auto it = pairs.find(key);
      if (it == pairs.end())
        pairs.emplace(key, bb);
      else
        it->second.merge(bb);
    }

    std::vector<Seg> segs = a.edge_segments();
    for (const Seg& s : b.edge_segments()) segs.push_back(s);
    for (const auto& [key, bb] : pairs) {
      PairAnalysis pa(needles_[key.first], needles_[key.second], inst_.net.nu);
      if (pa.identical()) continue;
      for (const Seg& s : pa.curve_pieces(inst_.box))
        if (std::optional<Seg> c = clip_seg_to_rect(s, bb.xlo, bb.xhi, bb.ylo, bb.yhi))
          segs.push_back(*c);
    }

    PlanarSubdivision arr = build_arrangement(segs, inst_.box);
    auto labeler = [this, &a, &b](const Point& x) -> std::pair<FaceLabel, FaceLabel> {
      int na = a.face[a.face_at(x)].label.ids.at(0);
      int nb = b.face[b.face_at(x)].label.ids.at(0);
      return {FaceLabel{{farther(na, nb, x)}}, FaceLabel{}};
    };
    label_faces(arr, labeler);
    return dissolve_relabel(arr, labeler);
  }

  // Which of the two candidate needles belongs to the farther site at x.
  // On an exact tie the canonically nearer site yields, so the farthest
  // labeling stays the complement of the nearest fold.
  int farther(int na, int nb, const Point& x) {
    const Needle& A = needles_[na];
    const Needle& B = needles_[nb];
    Rat va = needle_distance(A, x, inst_.net.nu);
    Rat vb = needle_distance(B, x, inst_.net.nu);
    if (va != vb) return va > vb ? na : nb;
    const std::vector<Needle>& pool = pair_pool(A.site, B.site);
    int w = canonical_pool_winner(pool, inst_.net.nu, x);
    return pool[w].site == A.site ? nb : na;
  }

  const std::vector<Needle>& pair_pool(int s, int t) {
    std::pair<int, int> key{std::min(s, t), std::max(s, t)};
    auto it = pools_.find(key);
    if (it == pools_.end()) {
      std::vector<Needle> pool = cache_.by_site[key.first].needles();
      const auto& more = cache_.by_site[key.second].needles();
      pool.insert(pool.end(), more.begin(), more.end());
      it = pools_.emplace(key, std::move(pool)).first;
    }
    return it->second;
  }

  const Instance& inst_;
  const SpmCache& cache_;
  std::vector<Needle> needles_;  // per-site slices, canonical order
  std::vector<int> base_;        // site id -> first global needle id
  std::map<std::pair<int, int>, std::vector<Needle>> pools_;
};

}  // namespace detail

// Procedure: compute_farthest_dc
// Divide-and-conquer farthest-site diagram. The result carries the same
// labels as the top order of the nearest tower: each face is labeled with
// every site except its farthest one.
inline OrderKDiagram compute_farthest_dc(const Instance& inst, const SpmCache* cache = nullptr) {
  InstanceReport rep = validate_instance(inst);
  if (!rep.ok) throw std::invalid_argument("invalid instance: " + rep.errors.front());
  const int n = static_cast<int>(inst.sites.size());
  if (n < 2) throw std::invalid_argument("farthest diagram needs at least two sites");

  SpmCache local;
  if (!cache) {
    local = build_spm_cache(inst);
    cache = &local;
  }

  detail::FarthestBuilder fb(inst, *cache);
  PlanarSubdivision fine = fb.build();
  const PlanarSubdivision pristine = fine;  // labeler must read unmodified labels
  auto labeler = [&](const Point& x) -> std::pair<FaceLabel, FaceLabel> {
    int gid = pristine.face[pristine.face_at(x)].label.ids.at(0);
    int far = fb.site_of(gid);
    std::vector<int> ids;
    ids.reserve(n - 1);
    for (int i = 0; i < n; ++i)
      if (i != far) ids.push_back(i);
    return {FaceLabel{std::move(ids)}, FaceLabel{}};
  };
  label_faces(fine, labeler);

  OrderKDiagram out;
  out.order = n - 1;
  out.sub = dissolve_relabel(fine, labeler);
  check_diagram_degeneracy(out.sub);
  return out;
}

}  // namespace cityvor
