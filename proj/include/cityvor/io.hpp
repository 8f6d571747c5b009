#pragma once
// Text documents for instances and diagrams. Both are JSON with every
// coordinate written as an exact decimal or "num/den" string -- numbers are
// never routed through binary floating point in either direction. Diagram
// serialization is canonical: chains are orientation- and start-normalized,
// everything is sorted, so two equal diagrams produce identical bytes and
// parse(serialize(x)) reproduces serialize(x) exactly.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cityvor/verify.hpp"

namespace cityvor {

using Json = nlohmann::ordered_json;

// Malformed document: bad JSON, bad rational, missing or mistyped field.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Rat json_rat(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    if (auto q = rat_parse(v.get<std::string>())) return *q;
    throw IoError(what + ": bad rational \"" + v.get<std::string>() + "\"");
  }
  throw IoError(what + ": expected an exact number written as \"3\", \"-4/7\" or \"2.5\"");
}

inline Point json_point(const Json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2) throw IoError(what + ": expected a [x, y] pair");
  return Point{json_rat(v[0], what), json_rat(v[1], what)};
}

inline std::vector<Point> json_points(const Json& v, const std::string& what) {
  if (!v.is_array()) throw IoError(what + ": expected a list of [x, y] pairs");
  std::vector<Point> out;
  out.reserve(v.size());
  for (const Json& e : v) out.push_back(json_point(e, what));
  return out;
}

inline int json_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw IoError(what + ": expected an integer");
  long long raw = v.get<long long>();
  if (raw < -(1ll << 31) || raw > (1ll << 31)) throw IoError(what + ": integer out of range");
  return static_cast<int>(raw);
}

inline std::vector<int> json_label(const Json& v, const std::string& what) {
  if (!v.is_array()) throw IoError(what + ": expected a list of site ids");
  std::vector<int> ids;
  ids.reserve(v.size());
  for (const Json& e : v) {
    int id = json_int(e, what);
    if (id < 0) throw IoError(what + ": negative site id");
    if (!ids.empty() && id <= ids.back()) throw IoError(what + ": site ids must be strictly increasing");
    ids.push_back(id);
  }
  return ids;
}

inline bool json_bool(const Json& v, const std::string& what) {
  if (!v.is_boolean()) throw IoError(what + ": expected true or false");
  return v.get<bool>();
}

inline const Json& json_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw IoError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline Json point_json(const Point& p) { return Json::array({rat_str(p.x), rat_str(p.y)}); }

inline Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const Point& p : pts) a.push_back(point_json(p));
  return a;
}

inline Json box_json(const Box& box) {
  return Json::array({rat_str(box.x0), rat_str(box.y0), rat_str(box.x1), rat_str(box.y1)});
}

inline Box json_box(const Json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 4) throw IoError(what + ": expected [x0, y0, x1, y1]");
  Box box{json_rat(v[0], what), json_rat(v[1], what), json_rat(v[2], what), json_rat(v[3], what)};
  if (!(box.x0 < box.x1) || !(box.y0 < box.y1)) throw IoError(what + ": box is empty");
  return box;
}

}  // namespace detail

// -------------------------------------------------------------- instances --

inline Json instance_json(const Instance& inst) {
  std::vector<Point> verts = network_vertices(inst.net);
  std::map<Point, int> vid;
  for (size_t i = 0; i < verts.size(); ++i) vid.emplace(verts[i], static_cast<int>(i));

  Json j;
  j["nu"] = rat_str(inst.net.nu);
  j["sites"] = detail::points_json(inst.sites);
  j["network_vertices"] = detail::points_json(verts);
  Json edges = Json::array();
  for (const Seg& e : inst.net.edges)
    edges.push_back(Json::array({vid.at(e.a), vid.at(e.b)}));
  j["network_edges"] = std::move(edges);
  j["bbox"] = detail::box_json(inst.box);
  return j;
}

inline std::string instance_text(const Instance& inst) { return instance_json(inst).dump(2) + "\n"; }

// Procedure: parse_instance
// Rebuilds an Instance from its document. A missing bbox is derived from the
// geometry: the tight bounds of sites and network, inflated on every side by
// half the larger extent plus two.
inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad document: ") + e.what());
  }
  if (!j.is_object()) throw IoError("top level must be an object");

  Instance inst;
  inst.net.nu = detail::json_rat(detail::json_field(j, "nu"), "nu");
  inst.sites = detail::json_points(detail::json_field(j, "sites"), "sites");

  std::vector<Point> verts =
      detail::json_points(detail::json_field(j, "network_vertices"), "network_vertices");
  const Json& edges = detail::json_field(j, "network_edges");
  if (!edges.is_array()) throw IoError("network_edges: expected a list of index pairs");
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2) throw IoError("network_edges: expected [i, j] pairs");
    int a = detail::json_int(e[0], "network_edges");
    int b = detail::json_int(e[1], "network_edges");
    if (a < 0 || b < 0 || a >= static_cast<int>(verts.size()) || b >= static_cast<int>(verts.size()))
      throw IoError("network_edges: vertex index out of range");
    inst.net.edges.push_back(Seg{verts[static_cast<size_t>(a)], verts[static_cast<size_t>(b)]});
  }

  if (j.contains("bbox")) {
    inst.box = detail::json_box(j["bbox"], "bbox");
  } else {
    std::vector<Point> all = inst.sites;
    all.insert(all.end(), verts.begin(), verts.end());
    if (all.empty()) {
      inst.box = Box{Rat(-12), Rat(-12), Rat(12), Rat(12)};
    } else {
      Box t{all[0].x, all[0].y, all[0].x, all[0].y};
      for (const Point& p : all) {
        t.x0 = rat_min(t.x0, p.x);
        t.y0 = rat_min(t.y0, p.y);
        t.x1 = rat_max(t.x1, p.x);
        t.y1 = rat_max(t.y1, p.y);
      }
      Rat m = rat_max(t.x1 - t.x0, t.y1 - t.y0) / 2 + 2;
      inst.box = Box{t.x0 - m, t.y0 - m, t.x1 + m, t.y1 + m};
    }
  }
  return inst;
}

// --------------------------------------------------------------- diagrams --

// Canonical document form of a diagram. Edges are the maximal equidistant
// chains: sites[0] is the surplus site of labels[0]'s side, breakpoints are
// the points where a side's shortest-path predecessor switches. Face records
// carry a representative interior point so the subdivision can be rebuilt.
struct DiagramDoc {
  struct Edge {
    std::vector<int> label_a, label_b;  // label_a < label_b
    int site_p = -1, site_q = -1;       // surplus site of each side
    bool closed = false;
    PolyLine poly;
    std::vector<Point> breakpoints;
  };
  struct Face {
    std::vector<int> label;
    bool unbounded = false;  // region continues past the bounding box
    Point rep;               // strictly interior point
  };

  int order = 1;
  Box box{};
  std::vector<Point> vertices;  // interior vertices of degree three or more
  std::vector<Edge> edges;
  std::vector<Face> faces;
};

namespace detail {

inline std::vector<Point> chain_breakpoints(const DiagramEdge& de, const SpmCache& cache,
                                            std::map<int, std::vector<Seg>>& cuts) {
  auto cuts_of = [&](int s) -> const std::vector<Seg>& {
    auto it = cuts.find(s);
    if (it == cuts.end()) it = cuts.emplace(s, interior_edges(cache.by_site[s].sub())).first;
    return it->second;
  };
  std::vector<Seg> cutters = cuts_of(de.site_p);
  {
    const std::vector<Seg>& more = cuts_of(de.site_q);
    cutters.insert(cutters.end(), more.begin(), more.end());
  }
  CityBisector bis;
  bis.site_p = cache.by_site[static_cast<size_t>(de.site_p)].site;
  bis.site_q = cache.by_site[static_cast<size_t>(de.site_q)].site;
  bis.id_p = de.site_p;
  bis.id_q = de.site_q;
  bis.chain_count = 1;
  bis.chain_closed = {de.closed};
  decompose_chain(de.poly, de.closed, cache.by_site[static_cast<size_t>(de.site_p)],
                  cache.by_site[static_cast<size_t>(de.site_q)], cutters, 0, bis.pieces);
  std::vector<Point> out;
  for (const MixedVertex& mv : mixed_vertices_of(bis)) out.push_back(mv.location);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool seg_on_rim(const Seg& s, const Box& box) {
  return (s.a.x == box.x0 && s.b.x == box.x0) || (s.a.x == box.x1 && s.b.x == box.x1) ||
         (s.a.y == box.y0 && s.b.y == box.y0) || (s.a.y == box.y1 && s.b.y == box.y1);
}

inline bool face_touches_rim(const PlanarSubdivision& sub, int f) {
  for (int h0 : sub.face[static_cast<size_t>(f)].cycle)
    for (int h : sub.cycle_halves(h0))
      if (seg_on_rim(sub.edge_seg(h), sub.box)) return true;
  return false;
}

}  // namespace detail

// Procedure: make_doc
// Canonical document of a diagram. The subdivision is rebuilt from the
// normalized chains first so vertex lists and interior representatives do
// not depend on which construction produced the input.
inline DiagramDoc make_doc(const OrderKDiagram& d, const Instance& inst,
                           const SpmCache* cache = nullptr) {
  SpmCache local;
  if (!cache) {
    local = build_spm_cache(inst);
    cache = &local;
  }

  DiagramDoc doc;
  doc.order = d.order;
  doc.box = d.sub.box;

  std::map<int, std::vector<Seg>> cuts;
  for (const DiagramEdge& de : diagram_edges(d)) {
    DiagramDoc::Edge e;
    e.label_a = de.label_a;
    e.label_b = de.label_b;
    e.site_p = de.site_p;
    e.site_q = de.site_q;
    e.closed = de.closed;
    e.poly = canonical_polyline(de.poly, de.closed);
    e.breakpoints = detail::chain_breakpoints(de, *cache, cuts);
    doc.edges.push_back(std::move(e));
  }
  std::sort(doc.edges.begin(), doc.edges.end(),
            [](const DiagramDoc::Edge& a, const DiagramDoc::Edge& b) {
              if (a.label_a != b.label_a) return a.label_a < b.label_a;
              if (a.label_b != b.label_b) return a.label_b < b.label_b;
              return a.poly < b.poly;
            });

  std::vector<Seg> segs;
  for (const DiagramDoc::Edge& e : doc.edges)
    for (size_t i = 0; i + 1 < e.poly.size(); ++i) segs.push_back(Seg{e.poly[i], e.poly[i + 1]});
  PlanarSubdivision canon = build_arrangement(segs, doc.box);
  label_faces(canon, [&](const Point& p) {
    int f = d.sub.face_at(p);
    return std::make_pair(d.sub.face[static_cast<size_t>(f)].label, FaceLabel{});
  });

  std::vector<int> deg(canon.vert.size(), 0);
  for (const auto& h : canon.half) ++deg[h.origin];
  for (size_t v = 0; v < canon.vert.size(); ++v)
    if (!detail::on_box_rim(canon.vert[v], doc.box) && deg[v] >= 3)
      doc.vertices.push_back(canon.vert[v]);

  for (size_t f = 0; f < canon.face.size(); ++f) {
    if (canon.face[f].unbounded) continue;
    DiagramDoc::Face df;
    df.label = canon.face[f].label.ids;
    df.unbounded = detail::face_touches_rim(canon, static_cast<int>(f));
    df.rep = canon.interior_point(static_cast<int>(f));
    doc.faces.push_back(std::move(df));
  }
  std::sort(doc.faces.begin(), doc.faces.end(),
            [](const DiagramDoc::Face& a, const DiagramDoc::Face& b) {
              if (a.label != b.label) return a.label < b.label;
              return a.rep < b.rep;
            });
  return doc;
}

inline Json doc_json(const DiagramDoc& doc) {
  Json j;
  j["order"] = doc.order;
  j["bbox"] = detail::box_json(doc.box);
  j["vertices"] = detail::points_json(doc.vertices);
  Json edges = Json::array();
  for (const DiagramDoc::Edge& e : doc.edges) {
    Json je;
    je["labels"] = Json::array({e.label_a, e.label_b});
    je["sites"] = Json::array({e.site_p, e.site_q});
    je["closed"] = e.closed;
    je["polyline"] = detail::points_json(e.poly);
    je["breakpoints"] = detail::points_json(e.breakpoints);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  Json faces = Json::array();
  for (const DiagramDoc::Face& f : doc.faces) {
    Json jf;
    jf["label"] = f.label;
    jf["unbounded"] = f.unbounded;
    jf["point"] = detail::point_json(f.rep);
    faces.push_back(std::move(jf));
  }
  j["faces"] = std::move(faces);
  return j;
}

inline std::string doc_text(const DiagramDoc& doc) { return doc_json(doc).dump(2) + "\n"; }

// Procedure: doc_parse
// Strict structural validation; anything malformed raises IoError.
inline DiagramDoc doc_parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad document: ") + e.what());
  }
  if (!j.is_object()) throw IoError("top level must be an object");

  DiagramDoc doc;
  doc.order = detail::json_int(detail::json_field(j, "order"), "order");
  if (doc.order < 1) throw IoError("order: must be at least 1");
  doc.box = detail::json_box(detail::json_field(j, "bbox"), "bbox");
  doc.vertices = detail::json_points(detail::json_field(j, "vertices"), "vertices");

  const Json& edges = detail::json_field(j, "edges");
  if (!edges.is_array()) throw IoError("edges: expected a list");
  for (const Json& je : edges) {
    if (!je.is_object()) throw IoError("edges: expected objects");
    DiagramDoc::Edge e;
    const Json& labels = detail::json_field(je, "labels");
    if (!labels.is_array() || labels.size() != 2) throw IoError("edges.labels: expected two labels");
    e.label_a = detail::json_label(labels[0], "edges.labels");
    e.label_b = detail::json_label(labels[1], "edges.labels");
    const Json& sites = detail::json_field(je, "sites");
    if (!sites.is_array() || sites.size() != 2) throw IoError("edges.sites: expected two site ids");
    e.site_p = detail::json_int(sites[0], "edges.sites");
    e.site_q = detail::json_int(sites[1], "edges.sites");
    e.closed = detail::json_bool(detail::json_field(je, "closed"), "edges.closed");
    e.poly = detail::json_points(detail::json_field(je, "polyline"), "edges.polyline");
    if (e.poly.size() < 2) throw IoError("edges.polyline: need at least two points");
    if (e.closed && (e.poly.size() < 4 || !(e.poly.front() == e.poly.back())))
      throw IoError("edges.polyline: closed chain must repeat its first point");
    e.breakpoints = detail::json_points(detail::json_field(je, "breakpoints"), "edges.breakpoints");
    if (static_cast<int>(e.label_a.size()) != doc.order ||
        static_cast<int>(e.label_b.size()) != doc.order)
      throw IoError("edges.labels: label size must equal the order");
    doc.edges.push_back(std::move(e));
  }

  const Json& faces = detail::json_field(j, "faces");
  if (!faces.is_array() || faces.empty()) throw IoError("faces: expected a non-empty list");
  for (const Json& jf : faces) {
    if (!jf.is_object()) throw IoError("faces: expected objects");
    DiagramDoc::Face f;
    f.label = detail::json_label(detail::json_field(jf, "label"), "faces.label");
    if (static_cast<int>(f.label.size()) != doc.order)
      throw IoError("faces.label: label size must equal the order");
    f.unbounded = detail::json_bool(detail::json_field(jf, "unbounded"), "faces.unbounded");
    f.rep = detail::json_point(detail::json_field(jf, "point"), "faces.point");
    doc.faces.push_back(std::move(f));
  }
  return doc;
}

// Procedure: doc_rebuild
// Reconstructs the labeled subdivision: arrangement of the chains inside the
// box, then one face label per representative point. Inconsistent documents
// (wrong face count, representatives off their faces) raise invalid_argument.
inline OrderKDiagram doc_rebuild(const DiagramDoc& doc) {
  std::vector<Seg> segs;
  for (const DiagramDoc::Edge& e : doc.edges)
    for (size_t i = 0; i + 1 < e.poly.size(); ++i) segs.push_back(Seg{e.poly[i], e.poly[i + 1]});

  OrderKDiagram d;
  d.order = doc.order;
  d.sub = build_arrangement(segs, doc.box);

  size_t bounded = 0;
  for (const auto& f : d.sub.face)
    if (!f.unbounded) ++bounded;
  if (bounded != doc.faces.size())
    throw std::invalid_argument("diagram document face count does not match its chains");

  std::vector<bool> hit(d.sub.face.size(), false);
  for (const DiagramDoc::Face& df : doc.faces) {
    PlanarSubdivision::Location loc = d.sub.locate(df.rep);
    if (loc.boundary() || loc.face < 0 || d.sub.face[static_cast<size_t>(loc.face)].unbounded ||
        hit[static_cast<size_t>(loc.face)])
      throw std::invalid_argument("diagram document face representative is misplaced");
    hit[static_cast<size_t>(loc.face)] = true;
    d.sub.face[static_cast<size_t>(loc.face)].label = FaceLabel{df.label};
  }
  return d;
}

// ------------------------------------------------------------ stats report --

// Procedure: stats_json
// Structural counts plus the per-chain measures. When every consecutive
// cluster pair of the label wheel over sites 0..k has a shared boundary, the
// smallest of those totals is reported as min_common_edge_segments.
inline Json stats_json(const StatsReport& st, const OrderKDiagram& d) {
  Json j;
  j["order"] = st.order;
  j["sites"] = st.site_count;
  j["network_edges"] = st.network_edge_count;
  j["vertices"] = st.vertex_count;
  j["edges"] = st.edge_count;
  j["faces"] = st.face_count;
  j["mixed"] = st.mixed_count;
  j["total_segments"] = std::accumulate(st.edge_segments.begin(), st.edge_segments.end(), 0);
  j["edge_segments"] = st.edge_segments;
  j["edge_pieces"] = st.edge_pieces;
  j["edge_mixed"] = st.edge_mixed;
  std::vector<int> wheel = worst_case_common_edges(d, d.order);
  if (!wheel.empty() && *std::min_element(wheel.begin(), wheel.end()) > 0)
    j["min_common_edge_segments"] = *std::min_element(wheel.begin(), wheel.end());
  return j;
}

}  // namespace cityvor
