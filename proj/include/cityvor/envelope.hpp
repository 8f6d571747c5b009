#pragma once
// Lower envelope of a set of needle distance functions over a box: a planar
// subdivision whose faces carry a caller-supplied classification of the
// canonically winning needle. Built by divide and conquer: sub-envelopes are
// overlaid and stitched along the canonical pairwise curves of the cell-wise
// winners, so every face boundary is exact and every tie is resolved by the
// same deterministic rules as the pairwise analysis.

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cityvor/bisect.hpp"
#include "cityvor/geometry.hpp"
#include "cityvor/needles.hpp"
#include "cityvor/subdivision.hpp"

namespace cityvor {

// Classification of a winning needle (by index and value) into a face id.
using NeedleClassifier = std::function<int(int, const Needle&)>;

class Envelope {
 public:
  Envelope(std::vector<Needle> ns, const Rat& nu, const Box& box, NeedleClassifier cls = {})
      : needles_(std::move(ns)),
        nu_(nu),
        box_(box),
        cls_(cls ? std::move(cls) : NeedleClassifier([](int i, const Needle&) { return i; })) {
    std::sort(needles_.begin(), needles_.end(), needle_less);
    needles_.erase(std::unique(needles_.begin(), needles_.end(),
                               [](const Needle& a, const Needle& b) {
                                 return a.site == b.site && a.anchor == b.anchor &&
                                        a.tip == b.tip && a.weight == b.weight;
                               }),
                   needles_.end());
    assert(!needles_.empty());
    PlanarSubdivision fine = env_range(0, static_cast<int>(needles_.size()));
    FaceLabeler lab = [this](const Point& p) {
      int w = winner_at(p);
      return std::make_pair(FaceLabel{{cls_(w, needles_[w])}}, FaceLabel{});
    };
    // Restamp the fine faces with classified labels first: the dissolve keeps
    // edges by comparing stored labels, and distinct winners may classify to
    // the same label (their shared boundary must then go).
    label_faces(fine, lab);
    sub_ = dissolve_relabel(fine, lab);
  }

  const std::vector<Needle>& needles() const { return needles_; }
  const Rat& speed() const { return nu_; }
  const Box& box() const { return box_; }
  const PlanarSubdivision& sub() const { return sub_; }

  // Smallest needle distance at a point.
  Rat value_at(const Point& p) const {
    Rat best = needle_distance(needles_[0], p, nu_);
    for (size_t i = 1; i < needles_.size(); ++i) {
      Rat d = needle_distance(needles_[i], p, nu_);
      if (d < best) best = d;
    }
    return best;
  }

  // Canonically winning needle at a point (argmin; exact ties resolved by the
  // pairwise ownership analysis, then by needle order).
  int winner_at(const Point& p) const { return winner_range(p, 0, static_cast<int>(needles_.size())); }

  int label_at(const Point& p) const {
    int w = winner_at(p);
    return cls_(w, needles_[w]);
  }

  const PairAnalysis& pair_analysis(int i, int j) const {
    assert(i < j);
    auto key = std::make_pair(i, j);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, PairAnalysis(needles_[i], needles_[j], nu_)).first;
    return it->second;
  }

 private:
  static constexpr int kBaseSize = 8;

  struct RatBox {
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
    void merge(const RatBox& o) {
      if (!o.init) return;
      grow(Point{o.xlo, o.ylo});
      grow(Point{o.xhi, o.yhi});
    }
  };

  std::vector<Needle> needles_;
  Rat nu_;
  Box box_;
  NeedleClassifier cls_;
  PlanarSubdivision sub_;
  mutable std::map<std::pair<int, int>, PairAnalysis> cache_;

  int winner_range(const Point& p, int lo, int hi) const {
    int w = lo;
    Rat best = needle_distance(needles_[lo], p, nu_);
    std::vector<int> tied;
    for (int i = lo + 1; i < hi; ++i) {
      Rat d = needle_distance(needles_[i], p, nu_);
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
      if (pair_analysis(w, u).classify(p) > 0) w = u;
    }
    return w;
  }

  // Labels faces with the canonical winner of the index range and dissolves
  // edges that separate equal winners.
  PlanarSubdivision label_range(PlanarSubdivision s, int lo, int hi) const {
    FaceLabeler lab = [this, lo, hi](const Point& p) {
      return std::make_pair(FaceLabel{{winner_range(p, lo, hi)}}, FaceLabel{});
    };
    label_faces(s, lab);
    return dissolve_relabel(s, lab);
  }

  static RatBox face_bbox(const PlanarSubdivision& s, int f) {
    RatBox bb;
    for (const auto& cyc : s.face_cycles(f))
      for (const Point& p : cyc) bb.grow(p);
    return bb;
  }

  PlanarSubdivision env_range(int lo, int hi) const {
    if (hi - lo <= kBaseSize) {
      std::vector<Seg> segs;
      for (int i = lo; i < hi; ++i) {
        for (int j = i + 1; j < hi; ++j) {
          const PairAnalysis& pa = pair_analysis(i, j);
          if (pa.identical()) continue;
          for (const Seg& s : pa.curve_pieces(box_)) segs.push_back(s);
        }
      }
      return label_range(build_arrangement(segs, box_), lo, hi);
    }
    int mid = lo + (hi - lo) / 2;
    PlanarSubdivision a = env_range(lo, mid);
    PlanarSubdivision b = env_range(mid, hi);
    PlanarSubdivision ov = overlay(a, b);
    std::map<std::pair<int, int>, RatBox> pairs;
    for (size_t f = 0; f < ov.face.size(); ++f) {
      if (ov.face[f].unbounded) continue;
      std::pair<int, int> key{ov.face[f].label.ids.at(0), ov.face[f].label2.ids.at(0)};
      RatBox bb = face_bbox(ov, static_cast<int>(f));
      auto it = pairs.find(key);
      if (it == pairs.end())
        pairs.emplace(key, bb);
      else
        it->second.merge(bb);
    }
    std::vector<Seg> segs = a.edge_segments();
    for (const Seg& s : b.edge_segments()) segs.push_back(s);
    for (const auto& [key, bb] : pairs) {
      const PairAnalysis& pa = pair_analysis(key.first, key.second);
      if (pa.identical()) continue;
      for (const Seg& s : pa.curve_pieces(box_)) {
        if (std::optional<Seg> c = clip_seg_to_rect(s, bb.xlo, bb.xhi, bb.ylo, bb.yhi))
          segs.push_back(*c);
      }
    }
    return label_range(build_arrangement(segs, box_), lo, hi);
  }
};

inline Envelope build_envelope(std::vector<Needle> ns, const Rat& nu, const Box& box,
                               NeedleClassifier cls = {}) {
  return Envelope(std::move(ns), nu, box, std::move(cls));
}

}  // namespace cityvor
