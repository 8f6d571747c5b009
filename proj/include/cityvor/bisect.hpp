#pragma once
// Pairwise analysis of two needle distance functions on their common linear
// grid: the canonical equidistant curve, point ownership exactly consistent
// with that curve, and whole-plane dominance tests. Two-dimensional tie
// regions are split along the 45-degree diagonal that extends the adjacent
// one-dimensional bisector; ties admitting no such diagonal collapse to the
// lexicographically smaller needle.

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cityvor/geometry.hpp"
#include "cityvor/needles.hpp"

namespace cityvor {

struct LinFn {
  Rat a, b, c;
  Rat eval(const Point& p) const { return a * p.x + b * p.y + c; }
};

inline LinFn lin_sub(const LinFn& f, const LinFn& g) {
  return LinFn{f.a - g.a, f.b - g.b, f.c - g.c};
}

// Procedure: clip_line_to_rect
// Segment of { a*x + b*y + c = 0 } inside an axis-aligned rectangle; empty
// when the intersection is a single point or misses the rectangle.
inline std::optional<Seg> clip_line_to_rect(const LinFn& L, const Rat& xlo, const Rat& xhi,
                                            const Rat& ylo, const Rat& yhi) {
  if (xlo >= xhi || ylo >= yhi) return std::nullopt;
  if (sgn(L.b) == 0) {
    if (sgn(L.a) == 0) return std::nullopt;
    Rat x = -L.c / L.a;
    if (x < xlo || x > xhi) return std::nullopt;
    return Seg{Point{x, ylo}, Point{x, yhi}};
  }
  if (sgn(L.a) == 0) {
    Rat y = -L.c / L.b;
    if (y < ylo || y > yhi) return std::nullopt;
    return Seg{Point{xlo, y}, Point{xhi, y}};
  }
  Rat xa = -(L.b * ylo + L.c) / L.a;
  Rat xb = -(L.b * yhi + L.c) / L.a;
  Rat lo = rat_max(xlo, rat_min(xa, xb));
  Rat hi = rat_min(xhi, rat_max(xa, xb));
  if (!(lo < hi)) return std::nullopt;
  Rat ya = -(L.a * lo + L.c) / L.b;
  Rat yb = -(L.a * hi + L.c) / L.b;
  return Seg{Point{lo, ya}, Point{hi, yb}};
}

// Procedure: clip_seg_to_rect
// Part of a segment inside an axis-aligned rectangle; empty when the
// intersection degenerates to a point.
inline std::optional<Seg> clip_seg_to_rect(const Seg& s, const Rat& xlo, const Rat& xhi,
                                           const Rat& ylo, const Rat& yhi) {
  Rat t0(0), t1(1);
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  auto axis = [&](const Rat& p0, const Rat& d, const Rat& lo, const Rat& hi) -> bool {
    if (sgn(d) == 0) return p0 >= lo && p0 <= hi;
    Rat ta = (lo - p0) / d;
    Rat tb = (hi - p0) / d;
    if (ta > tb) std::swap(ta, tb);
    if (ta > t0) t0 = ta;
    if (tb < t1) t1 = tb;
    return true;
  };
  if (!axis(s.a.x, dx, xlo, xhi)) return std::nullopt;
  if (!axis(s.a.y, dy, ylo, yhi)) return std::nullopt;
  if (!(t0 < t1)) return std::nullopt;
  return Seg{Point{s.a.x + t0 * dx, s.a.y + t0 * dy}, Point{s.a.x + t1 * dx, s.a.y + t1 * dy}};
}

// Procedure: pair_analysis
// Overlays the break lines of two needles so that both distance functions are
// linear on every cell, then resolves each cell into one of four kinds:
//   - sign: the difference has a genuine zero line (or none) inside the cell;
//   - constant: the difference is a nonzero constant;
//   - tie along the whole cell with a canonical 45-degree splitting diagonal
//     (both functions are cones whose apexes differ in both coordinates);
//   - tie along the whole cell owned wholesale by the lex-smaller needle.
class PairAnalysis {
 public:
  PairAnalysis(const Needle& first, const Needle& second, const Rat& nu)
      : n1_(first), n2_(second), nu_(nu) {
    collect_breaks();
    build_cells();
  }

  const Needle& first() const { return n1_; }
  const Needle& second() const { return n2_; }

  // Both distance functions coincide everywhere.
  bool identical() const { return identical_; }
  // -1: first <= second everywhere; +1: second <= first everywhere; else 0.
  int dominance() const { return dominance_; }

  // Ownership of a point: -1 first needle, +1 second, 0 exactly on the
  // canonical curve. Sees through hairline ties that separate nothing.
  int classify(const Point& r) const {
    Rat d1 = needle_distance(n1_, r, nu_);
    Rat d2 = needle_distance(n2_, r, nu_);
    if (d1 != d2) return d1 < d2 ? -1 : +1;
    bool first_seen = false, second_seen = false;
    for (size_t ix : slabs_containing(xs_, r.x)) {
      for (size_t iy : slabs_containing(ys_, r.y)) {
        cell_votes(cell(ix, iy), ix, iy, r, first_seen, second_seen);
        if (first_seen && second_seen) return 0;
      }
    }
    assert(first_seen || second_seen);
    return first_seen ? -1 : +1;
  }

  // Atomic segments of the canonical curve clipped to the box: zero lines and
  // tie diagonals interior to cells, plus the sub-intervals of grid edges
  // across which ownership changes. Pieces on the box boundary are dropped.
  std::vector<Seg> curve_pieces(const Box& box) const {
    std::vector<Seg> out;
    if (identical_) return out;
    size_t nyc = ys_.size() + 1;
    for (size_t ix = 0; ix <= xs_.size(); ++ix) {
      for (size_t iy = 0; iy <= ys_.size(); ++iy) {
        const Cell& c = cells_[ix * nyc + iy];
        const LinFn* L = structure(c);
        if (!L) continue;
        Rat xlo = box.x0, xhi = box.x1, ylo = box.y0, yhi = box.y1;
        if (ix > 0) xlo = rat_max(xlo, xs_[ix - 1]);
        if (ix < xs_.size()) xhi = rat_min(xhi, xs_[ix]);
        if (iy > 0) ylo = rat_max(ylo, ys_[iy - 1]);
        if (iy < ys_.size()) yhi = rat_min(yhi, ys_[iy]);
        std::optional<Seg> s = clip_line_to_rect(*L, xlo, xhi, ylo, yhi);
        if (!s) continue;
        Point mid = s->midpoint();
        if (!strictly_inside_slab(xs_, ix, mid.x)) continue;
        if (!strictly_inside_slab(ys_, iy, mid.y)) continue;
        if (on_box_rim(*s, box)) continue;
        out.push_back(*s);
      }
    }
    // Grid edges along vertical break lines.
    for (size_t bi = 0; bi < xs_.size(); ++bi) {
      const Rat& x = xs_[bi];
      if (!(box.x0 < x && x < box.x1)) continue;
      for (size_t iy = 0; iy <= ys_.size(); ++iy) {
        Rat ylo = box.y0, yhi = box.y1;
        if (iy > 0) ylo = rat_max(ylo, ys_[iy - 1]);
        if (iy < ys_.size()) yhi = rat_min(yhi, ys_[iy]);
        if (!(ylo < yhi)) continue;
        const Cell& cl = cell(bi, iy);
        const Cell& cr = cell(bi + 1, iy);
        std::vector<Rat> splits{ylo, yhi};
        structure_cross_vertical(cl, x, ylo, yhi, splits);
        structure_cross_vertical(cr, x, ylo, yhi, splits);
        std::sort(splits.begin(), splits.end());
        splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
        for (size_t t = 0; t + 1 < splits.size(); ++t) {
          Point m{x, (splits[t] + splits[t + 1]) / 2};
          if (side_owner(cl, m, -1, 0) != side_owner(cr, m, +1, 0))
            out.push_back(Seg{Point{x, splits[t]}, Point{x, splits[t + 1]}});
        }
      }
    }
    // Grid edges along horizontal break lines.
    for (size_t bi = 0; bi < ys_.size(); ++bi) {
      const Rat& y = ys_[bi];
      if (!(box.y0 < y && y < box.y1)) continue;
      for (size_t ix = 0; ix <= xs_.size(); ++ix) {
        Rat xlo = box.x0, xhi = box.x1;
        if (ix > 0) xlo = rat_max(xlo, xs_[ix - 1]);
        if (ix < xs_.size()) xhi = rat_min(xhi, xs_[ix]);
        if (!(xlo < xhi)) continue;
        const Cell& cb = cell(ix, bi);
        const Cell& ct = cell(ix, bi + 1);
        std::vector<Rat> splits{xlo, xhi};
        structure_cross_horizontal(cb, y, xlo, xhi, splits);
        structure_cross_horizontal(ct, y, xlo, xhi, splits);
        std::sort(splits.begin(), splits.end());
        splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
        for (size_t t = 0; t + 1 < splits.size(); ++t) {
          Point m{(splits[t] + splits[t + 1]) / 2, y};
          if (side_owner(cb, m, 0, -1) != side_owner(ct, m, 0, +1))
            out.push_back(Seg{Point{splits[t], y}, Point{splits[t + 1], y}});
        }
      }
    }
    return out;
  }

 private:
  enum Kind { kSign, kConst, kTieLex, kTieSplit };

  struct Cell {
    LinFn f1, f2, delta;
    bool cone1 = false, cone2 = false;
    Point apex1, apex2;
    Kind kind = kSign;
    LinFn diag;          // kTieSplit: the canonical splitting diagonal
    int first_side = 0;  // kTieSplit: sign of diag on the first needle's side
    int owner = 0;       // kConst / kTieLex: constant ownership
  };

  struct Piece {
    LinFn f;
    bool cone = false;
    Point apex;
  };

  Needle n1_, n2_;
  Rat nu_;
  std::vector<Rat> xs_, ys_;
  std::vector<Cell> cells_;
  bool identical_ = true;
  int dominance_ = 0;

  const Cell& cell(size_t ix, size_t iy) const { return cells_[ix * (ys_.size() + 1) + iy]; }

  static const LinFn* structure(const Cell& c) {
    if (c.kind == kSign) return &c.delta;
    if (c.kind == kTieSplit) return &c.diag;
    return nullptr;
  }

  static void needle_breaks(const Needle& n, std::vector<Rat>& xs, std::vector<Rat>& ys) {
    if (n.is_point()) {
      xs.push_back(n.anchor.x);
      ys.push_back(n.anchor.y);
    } else if (n.horizontal()) {
      xs.push_back(n.lo_x());
      xs.push_back(n.hi_x());
      xs.push_back(n.anchor.x);
      ys.push_back(n.anchor.y);
    } else {
      ys.push_back(n.lo_y());
      ys.push_back(n.hi_y());
      ys.push_back(n.anchor.y);
      xs.push_back(n.anchor.x);
    }
  }

  void collect_breaks() {
    needle_breaks(n1_, xs_, ys_);
    needle_breaks(n2_, xs_, ys_);
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
    std::sort(ys_.begin(), ys_.end());
    ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());
  }

  static Rat rep_coord(const std::vector<Rat>& bs, size_t i) {
    if (bs.empty()) return Rat(0);
    if (i == 0) return bs.front() - 1;
    if (i == bs.size()) return bs.back() + 1;
    return (bs[i - 1] + bs[i]) / 2;
  }

  static bool strictly_inside_slab(const std::vector<Rat>& bs, size_t i, const Rat& v) {
    if (i > 0 && !(bs[i - 1] < v)) return false;
    if (i < bs.size() && !(v < bs[i])) return false;
    return true;
  }

  static bool on_box_rim(const Seg& s, const Box& box) {
    if (s.a.x == s.b.x && (s.a.x == box.x0 || s.a.x == box.x1)) return true;
    if (s.a.y == s.b.y && (s.a.y == box.y0 || s.a.y == box.y1)) return true;
    return false;
  }

  static std::vector<size_t> slabs_containing(const std::vector<Rat>& bs, const Rat& v) {
    size_t lo = static_cast<size_t>(std::lower_bound(bs.begin(), bs.end(), v) - bs.begin());
    std::vector<size_t> out{lo};
    if (lo < bs.size() && bs[lo] == v) out.push_back(lo + 1);
    return out;
  }

  void make_cone(Piece& out, const Point& apex, const Rat& w, const Point& m) const {
    int sx = sgn(m.x - apex.x);
    int sy = sgn(m.y - apex.y);
    assert(sx != 0 && sy != 0);
    out.cone = true;
    out.apex = apex;
    out.f = LinFn{Rat(sx), Rat(sy), w - Rat(sx) * apex.x - Rat(sy) * apex.y};
  }

  Piece needle_piece(const Needle& n, const Point& m) const {
    Piece out;
    if (n.is_point()) {
      make_cone(out, n.anchor, n.weight, m);
      return out;
    }
    if (n.horizontal()) {
      if (m.x < n.lo_x()) {
        make_cone(out, Point{n.lo_x(), n.anchor.y}, n.weight + rat_abs(n.lo_x() - n.anchor.x) / nu_, m);
      } else if (m.x > n.hi_x()) {
        make_cone(out, Point{n.hi_x(), n.anchor.y}, n.weight + rat_abs(n.hi_x() - n.anchor.x) / nu_, m);
      } else {
        int sx = sgn(m.x - n.anchor.x);
        int sy = sgn(m.y - n.anchor.y);
        assert(sx != 0 && sy != 0);
        out.f = LinFn{Rat(sx) / nu_, Rat(sy),
                      n.weight - Rat(sx) * n.anchor.x / nu_ - Rat(sy) * n.anchor.y};
      }
      return out;
    }
    if (m.y < n.lo_y()) {
      make_cone(out, Point{n.anchor.x, n.lo_y()}, n.weight + rat_abs(n.lo_y() - n.anchor.y) / nu_, m);
    } else if (m.y > n.hi_y()) {
      make_cone(out, Point{n.anchor.x, n.hi_y()}, n.weight + rat_abs(n.hi_y() - n.anchor.y) / nu_, m);
    } else {
      int sx = sgn(m.x - n.anchor.x);
      int sy = sgn(m.y - n.anchor.y);
      assert(sx != 0 && sy != 0);
      out.f = LinFn{Rat(sx), Rat(sy) / nu_,
                    n.weight - Rat(sx) * n.anchor.x - Rat(sy) * n.anchor.y / nu_};
    }
    return out;
  }

  void build_cells() {
    size_t nyc = ys_.size() + 1;
    cells_.resize((xs_.size() + 1) * nyc);
    bool sup_pos = false, inf_neg = false;
    for (size_t ix = 0; ix <= xs_.size(); ++ix) {
      for (size_t iy = 0; iy <= ys_.size(); ++iy) {
        Cell& c = cells_[ix * nyc + iy];
        Point m{rep_coord(xs_, ix), rep_coord(ys_, iy)};
        Piece p1 = needle_piece(n1_, m);
        Piece p2 = needle_piece(n2_, m);
        c.f1 = p1.f;
        c.cone1 = p1.cone;
        c.apex1 = p1.apex;
        c.f2 = p2.f;
        c.cone2 = p2.cone;
        c.apex2 = p2.apex;
        c.delta = lin_sub(c.f1, c.f2);
        bool za = sgn(c.delta.a) == 0, zb = sgn(c.delta.b) == 0, zc = sgn(c.delta.c) == 0;
        if (!(za && zb && zc)) identical_ = false;
        if (za && zb) {
          if (!zc) {
            c.kind = kConst;
            c.owner = sgn(c.delta.c) < 0 ? -1 : +1;
          } else if (c.cone1 && c.cone2 && c.apex1.x != c.apex2.x && c.apex1.y != c.apex2.y) {
            c.kind = kTieSplit;
            int sx = sgn(c.f1.a);
            int sy = sgn(c.f1.b);
            Rat cx = sx > 0 ? rat_max(c.apex1.x, c.apex2.x) : rat_min(c.apex1.x, c.apex2.x);
            Rat cy = sy > 0 ? rat_max(c.apex1.y, c.apex2.y) : rat_min(c.apex1.y, c.apex2.y);
            int slope = -sgn((c.apex2.x - c.apex1.x) * (c.apex2.y - c.apex1.y));
            c.diag = slope < 0 ? LinFn{Rat(1), Rat(1), -(cx + cy)}
                               : LinFn{Rat(1), Rat(-1), -(cx - cy)};
            c.first_side = sgn(c.diag.eval(c.apex1));
            if (c.first_side == 0) c.first_side = -sgn(c.diag.eval(c.apex2));
            assert(c.first_side != 0);
          } else {
            c.kind = kTieLex;
            c.owner = needle_less(n2_, n1_) ? +1 : -1;
          }
        } else {
          c.kind = kSign;
        }
        if (c.kind != kTieLex && c.kind != kTieSplit) {
          if (sup_positive(c.delta, ix, iy)) sup_pos = true;
          if (inf_negative(c.delta, ix, iy)) inf_neg = true;
        }
      }
    }
    if (identical_)
      dominance_ = 0;
    else if (!sup_pos)
      dominance_ = -1;
    else if (!inf_neg)
      dominance_ = +1;
    else
      dominance_ = 0;
  }

  bool sup_positive(const LinFn& d, size_t ix, size_t iy) const {
    Rat s = d.c;
    if (sgn(d.a) > 0) {
      if (ix == xs_.size()) return true;
      s += d.a * xs_[ix];
    } else if (sgn(d.a) < 0) {
      if (ix == 0) return true;
      s += d.a * xs_[ix - 1];
    }
    if (sgn(d.b) > 0) {
      if (iy == ys_.size()) return true;
      s += d.b * ys_[iy];
    } else if (sgn(d.b) < 0) {
      if (iy == 0) return true;
      s += d.b * ys_[iy - 1];
    }
    return sgn(s) > 0;
  }

  bool inf_negative(const LinFn& d, size_t ix, size_t iy) const {
    LinFn neg{-d.a, -d.b, -d.c};
    return sup_positive(neg, ix, iy);
  }

  // Signs a linear form takes inside the open cell arbitrarily near a point
  // of the cell's closure: the point's position against the slab bounds
  // restricts the admissible approach directions.
  void presence(const LinFn& L, size_t ix, size_t iy, const Point& r, bool& neg, bool& pos) const {
    int exlo = -1, exhi = +1, eylo = -1, eyhi = +1;
    if (ix > 0 && r.x == xs_[ix - 1]) exlo = +1;          // at low x bound: only +x
    if (ix < xs_.size() && r.x == xs_[ix]) exhi = -1;     // at high x bound: only -x
    if (iy > 0 && r.y == ys_[iy - 1]) eylo = +1;
    if (iy < ys_.size() && r.y == ys_[iy]) eyhi = -1;
    int sa = sgn(L.a), sb = sgn(L.b);
    for (int ex = exlo; ex <= exhi; ex += 2) {
      for (int ey = eylo; ey <= eyhi; ey += 2) {
        int qa = sa * ex, qb = sb * ey;
        if (qa < 0 || qb < 0) neg = true;
        if (qa > 0 || qb > 0) pos = true;
      }
    }
  }

  void cell_votes(const Cell& c, size_t ix, size_t iy, const Point& r, bool& first_seen,
                  bool& second_seen) const {
    switch (c.kind) {
      case kConst:
        assert(false && "constant nonzero cell cannot touch an equidistant point");
        break;
      case kTieLex:
        (c.owner < 0 ? first_seen : second_seen) = true;
        break;
      case kSign: {
        bool neg = false, pos = false;
        presence(c.delta, ix, iy, r, neg, pos);
        if (neg) first_seen = true;
        if (pos) second_seen = true;
        break;
      }
      case kTieSplit: {
        int t = sgn(c.diag.eval(r));
        bool neg = false, pos = false;
        if (t == 0) {
          presence(c.diag, ix, iy, r, neg, pos);
        } else {
          (t < 0 ? neg : pos) = true;
        }
        if (neg) (c.first_side < 0 ? first_seen : second_seen) = true;
        if (pos) (c.first_side > 0 ? first_seen : second_seen) = true;
        break;
      }
    }
  }

  // Ownership limit of a cell at a point on its boundary edge, approaching
  // along the inward normal (inx, iny).
  int side_owner(const Cell& c, const Point& m, int inx, int iny) const {
    switch (c.kind) {
      case kConst:
      case kTieLex:
        return c.owner;
      case kSign: {
        int v = sgn(c.delta.eval(m));
        if (v != 0) return v < 0 ? -1 : +1;
        int d = sgn(c.delta.a) * inx + sgn(c.delta.b) * iny;
        assert(d != 0);
        return d < 0 ? -1 : +1;
      }
      case kTieSplit: {
        int t = sgn(c.diag.eval(m));
        assert(t != 0);
        return t == c.first_side ? -1 : +1;
      }
    }
    return 0;
  }

  static void add_split(std::vector<Rat>& splits, const Rat& v, const Rat& lo, const Rat& hi) {
    if (lo < v && v < hi) splits.push_back(v);
  }

  void structure_cross_vertical(const Cell& c, const Rat& x, const Rat& ylo, const Rat& yhi,
                                std::vector<Rat>& splits) const {
    const LinFn* L = structure(c);
    if (!L || sgn(L->b) == 0) return;
    add_split(splits, -(L->a * x + L->c) / L->b, ylo, yhi);
  }

  void structure_cross_horizontal(const Cell& c, const Rat& y, const Rat& xlo, const Rat& xhi,
                                  std::vector<Rat>& splits) const {
    const LinFn* L = structure(c);
    if (!L || sgn(L->a) == 0) return;
    add_split(splits, -(L->b * y + L->c) / L->a, xlo, xhi);
  }
};

// Procedure: stitch_segments
// Joins atomic curve segments into polylines: chains start at endpoints whose
// degree differs from two, leftover closed loops are walked from their
// lexicographic minimum, and collinear runs are merged. Deterministic.
inline std::vector<PolyLine> stitch_segments(std::vector<Seg> segs) {
  for (Seg& s : segs)
    if (s.b < s.a) std::swap(s.a, s.b);
  std::sort(segs.begin(), segs.end(), [](const Seg& u, const Seg& v) {
    if (u.a != v.a) return u.a < v.a;
    return u.b < v.b;
  });
  segs.erase(std::unique(segs.begin(), segs.end(),
                         [](const Seg& u, const Seg& v) { return u.a == v.a && u.b == v.b; }),
             segs.end());
  std::map<Point, std::vector<int>> adj;
  for (size_t i = 0; i < segs.size(); ++i) {
    adj[segs[i].a].push_back(static_cast<int>(i));
    adj[segs[i].b].push_back(static_cast<int>(i));
  }
  std::vector<bool> used(segs.size(), false);
  auto other = [&](int e, const Point& p) -> Point {
    return segs[e].a == p ? segs[e].b : segs[e].a;
  };
  auto walk = [&](int e0, Point cur) -> PolyLine {
    PolyLine pl{cur};
    int e = e0;
    while (true) {
      used[e] = true;
      cur = other(e, cur);
      pl.push_back(cur);
      const std::vector<int>& inc = adj[cur];
      if (inc.size() != 2) break;
      int nxt = -1;
      for (int cand : inc)
        if (!used[cand]) nxt = cand;
      if (nxt < 0) break;
      e = nxt;
    }
    return pl;
  };
  auto merge_collinear_run = [](PolyLine pl) -> PolyLine {
    PolyLine out;
    for (const Point& p : pl) {
      while (out.size() >= 2 && collinear(out[out.size() - 2], out[out.size() - 1], p))
        out.pop_back();
      out.push_back(p);
    }
    return out;
  };
  std::vector<PolyLine> out;
  for (const auto& [pt, inc] : adj) {
    if (inc.size() == 2) continue;
    for (int e : inc)
      if (!used[e]) out.push_back(merge_collinear_run(walk(e, pt)));
  }
  for (const auto& [pt, inc] : adj) {
    for (int e : inc) {
      if (used[e]) continue;
      PolyLine loop = walk(e, pt);  // closed: first == last
      assert(loop.size() >= 4 && loop.front() == loop.back());
      size_t corner = 0;
      for (size_t i = 1; i + 1 < loop.size(); ++i) {
        if (!collinear(loop[i - 1], loop[i], loop[i + 1])) {
          corner = i;
          break;
        }
      }
      PolyLine rot;
      for (size_t i = corner; i + 1 < loop.size(); ++i) rot.push_back(loop[i]);
      for (size_t i = 0; i <= corner; ++i) rot.push_back(loop[i]);
      out.push_back(merge_collinear_run(rot));
    }
  }
  return out;
}

// Total number of straight segments across a set of polylines.
inline size_t polyline_segment_count(const std::vector<PolyLine>& ps) {
  size_t n = 0;
  for (const PolyLine& p : ps) n += p.size() - 1;
  return n;
}

// Procedure: needle_bisector
// Canonical equidistant curve of two distinct needles, clipped to the box and
// stitched into polylines.
inline std::vector<PolyLine> needle_bisector(const Needle& a, const Needle& b, const Rat& nu,
                                             const Box& box) {
  if (a.anchor == b.anchor && a.tip == b.tip && a.weight == b.weight)
    throw std::invalid_argument("coincident needles");
  PairAnalysis pa(a, b, nu);
  assert(!pa.identical());
  return stitch_segments(pa.curve_pieces(box));
}

}  // namespace cityvor
