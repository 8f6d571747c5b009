#pragma once
// SVG renderings of diagrams and shortest path maps, for human inspection
// only: this is the one place exact coordinates are rounded to doubles.

#include <cstdio>
#include <string>
#include <vector>

#include "cityvor/diagrams.hpp"

namespace cityvor {
namespace detail {

inline std::string svg_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Screen mapping: the box scaled to fit a 960-pixel major side, y flipped.
struct SvgFrame {
  double x0, y0, x1, y1, scale;
  double margin = 24;

  explicit SvgFrame(const Box& box)
      : x0(box.x0.get_d()), y0(box.y0.get_d()), x1(box.x1.get_d()), y1(box.y1.get_d()) {
    double w = x1 - x0, h = y1 - y0;
    scale = 960.0 / (w > h ? w : h);
  }
  double width() const { return (x1 - x0) * scale + 2 * margin; }
  double height() const { return (y1 - y0) * scale + 2 * margin; }
  std::string x(const Rat& v) const { return svg_num(margin + (v.get_d() - x0) * scale); }
  std::string y(const Rat& v) const { return svg_num(margin + (y1 - v.get_d()) * scale); }
};

// Stable pastel fill from a label: equal labels render equal, neighbors split.
inline std::string svg_color(const std::vector<int>& ids) {
  unsigned long long h = 1469598103934665603ull;
  for (int id : ids) {
    h ^= static_cast<unsigned long long>(id) + 0x9e3779b9ull;
    h *= 1099511628211ull;
  }
  unsigned hue = static_cast<unsigned>(h % 360);
  unsigned light = 72 + static_cast<unsigned>((h / 360) % 16);
  return "hsl(" + std::to_string(hue) + ",62%," + std::to_string(light) + "%)";
}

inline std::string svg_open(const SvgFrame& fr) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(fr.width()) +
         "\" height=\"" + svg_num(fr.height()) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
}

inline void svg_faces(std::string& out, const PlanarSubdivision& sub, const SvgFrame& fr) {
  for (size_t f = 0; f < sub.face.size(); ++f) {
    if (sub.face[f].unbounded) continue;
    std::string path;
    for (const auto& ring : sub.face_cycles(static_cast<int>(f))) {
      for (size_t i = 0; i < ring.size(); ++i)
        path += (i == 0 ? "M" : "L") + fr.x(ring[i].x) + " " + fr.y(ring[i].y);
      path += "Z";
    }
    out += "<path d=\"" + path + "\" fill=\"" + svg_color(sub.face[f].label.ids) +
           "\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
  }
}

inline void svg_line(std::string& out, const Seg& s, const SvgFrame& fr, const char* style) {
  out += "<line x1=\"" + fr.x(s.a.x) + "\" y1=\"" + fr.y(s.a.y) + "\" x2=\"" + fr.x(s.b.x) +
         "\" y2=\"" + fr.y(s.b.y) + "\" " + style + "/>\n";
}

inline void svg_boundaries(std::string& out, const PlanarSubdivision& sub, const SvgFrame& fr) {
  for (int h = 0; h < static_cast<int>(sub.half.size()); h += 2) {
    const auto& fa = sub.face[static_cast<size_t>(sub.half[static_cast<size_t>(h)].face)];
    const auto& fb = sub.face[static_cast<size_t>(sub.half[static_cast<size_t>(h) + 1].face)];
    if (fa.unbounded || fb.unbounded) continue;
    svg_line(out, sub.edge_seg(h), fr, "stroke=\"#333\" stroke-width=\"1.6\"");
  }
  out += "<rect x=\"" + svg_num(fr.margin) + "\" y=\"" + svg_num(fr.margin) + "\" width=\"" +
         svg_num(fr.width() - 2 * fr.margin) + "\" height=\"" + svg_num(fr.height() - 2 * fr.margin) +
         "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
}

inline void svg_network(std::string& out, const TransportNetwork& net, const SvgFrame& fr) {
  for (const Seg& e : net.edges)
    svg_line(out, e, fr,
             "stroke=\"#000\" stroke-width=\"4.5\" stroke-linecap=\"round\" opacity=\"0.8\"");
}

inline void svg_marker(std::string& out, const Point& p, const SvgFrame& fr, bool square) {
  if (square) {
    out += "<rect x=\"" + svg_num(std::stod(fr.x(p.x)) - 3.4) + "\" y=\"" +
           svg_num(std::stod(fr.y(p.y)) - 3.4) +
           "\" width=\"6.8\" height=\"6.8\" fill=\"#ffd24d\" stroke=\"#000\" stroke-width=\"1\"/>\n";
  } else {
    out += "<circle cx=\"" + fr.x(p.x) + "\" cy=\"" + fr.y(p.y) +
           "\" r=\"4\" fill=\"#b3001b\" stroke=\"#fff\" stroke-width=\"1.2\"/>\n";
  }
}

}  // namespace detail

// Procedure: svg_diagram
// Faces tinted by a hash of their label, region boundaries solid, the
// transport network bold, sites as dots, breakpoints as squares.
inline std::string svg_diagram(const OrderKDiagram& d, const Instance& inst,
                               const std::vector<MixedVertex>& mixed = {}) {
  detail::SvgFrame fr(d.sub.box);
  std::string out = detail::svg_open(fr);
  detail::svg_faces(out, d.sub, fr);
  detail::svg_boundaries(out, d.sub, fr);
  detail::svg_network(out, inst.net, fr);
  for (const MixedVertex& mv : mixed) detail::svg_marker(out, mv.location, fr, true);
  for (const Point& s : inst.sites) detail::svg_marker(out, s, fr, false);
  out += "</svg>\n";
  return out;
}

// Procedure: svg_spm
// One site's shortest path map: cells tinted by predecessor, predecessor
// anchors as small dots, the network bold, the site itself marked.
inline std::string svg_spm(const ShortestPathMap& spm, const TransportNetwork& net) {
  detail::SvgFrame fr(spm.sub().box);
  std::string out = detail::svg_open(fr);
  detail::svg_faces(out, spm.sub(), fr);
  detail::svg_boundaries(out, spm.sub(), fr);
  detail::svg_network(out, net, fr);
  for (const Point& a : spm.anchors)
    out += "<circle cx=\"" + fr.x(a.x) + "\" cy=\"" + fr.y(a.y) + "\" r=\"2.4\" fill=\"#000\"/>\n";
  detail::svg_marker(out, spm.site, fr, false);
  out += "</svg>\n";
  return out;
}

}  // namespace cityvor
