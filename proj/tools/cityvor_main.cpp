// Command-line front end: validate, compute, check and render diagrams from
// instance files. Exit codes: 0 ok, 1 semantic failure, 2 usage or parse
// error, 3 degenerate configuration.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cityvor/farthest.hpp"
#include "cityvor/io.hpp"
#include "cityvor/svg.hpp"

namespace {

using namespace cityvor;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    spill(path, text);
}

Instance load_instance(const std::string& path) {
  Instance inst = parse_instance(slurp(path));
  InstanceReport rep = validate_instance(inst);
  if (!rep.ok) throw std::invalid_argument("invalid instance: " + rep.errors.front());
  return inst;
}

std::string ids_str(const std::vector<int>& ids) {
  std::string s = "{";
  for (size_t i = 0; i < ids.size(); ++i) s += (i ? " " : "") + std::to_string(ids[i]);
  return s + "}";
}

int cmd_validate(const std::string& path) {
  Instance inst = parse_instance(slurp(path));
  InstanceReport rep = validate_instance(inst);
  if (!rep.ok) {
    for (const std::string& e : rep.errors) std::cout << "invalid: " << e << "\n";
    return 1;
  }
  std::cout << "ok: " << inst.sites.size() << " sites, " << inst.net.edges.size()
            << " network edges, speed " << rat_str(inst.net.nu) << "\n";
  return 0;
}

// Shared by voronoi/check: order selection resolves to a concrete build.
OrderKDiagram build_diagram(const Instance& inst, int order, bool farthest, bool dc,
                            const SpmCache& cache) {
  if (farthest) {
    int n = static_cast<int>(inst.sites.size());
    if (dc) return compute_farthest_dc(inst, &cache);
    OrderKDiagram d = compute_first_order(inst, &cache);
    while (d.order < n - 1) d = compute_next_order(d, inst, &cache);
    return d;
  }
  int n = static_cast<int>(inst.sites.size());
  if (order < 1 || order > n - 1)
    throw std::invalid_argument("order must lie between 1 and the site count minus one");
  OrderKDiagram d = compute_first_order(inst, &cache);
  while (d.order < order) d = compute_next_order(d, inst, &cache);
  return d;
}

int cmd_voronoi(const std::string& path, int order, bool farthest, bool dc,
                const std::string& out, const std::string& svg) {
  Instance inst = load_instance(path);
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = build_diagram(inst, order, farthest, dc, cache);
  emit(out, doc_text(make_doc(d, inst, &cache)));
  if (!svg.empty()) spill(svg, svg_diagram(d, inst, find_mixed_vertices(d, cache.by_site)));
  return 0;
}

int cmd_check(const std::string& path, int order, bool farthest, int samples,
              unsigned long long seed, const std::string& against) {
  Instance inst = load_instance(path);
  OrderKDiagram d;
  if (!against.empty()) {
    DiagramDoc doc = doc_parse(slurp(against));
    if (order > 0 && order != doc.order)
      throw std::invalid_argument("requested order disagrees with the diagram file");
    if (!(doc.box.x0 == inst.box.x0 && doc.box.y0 == inst.box.y0 &&
          doc.box.x1 == inst.box.x1 && doc.box.y1 == inst.box.y1))
      throw std::invalid_argument("diagram bounding box differs from the instance");
    d = doc_rebuild(doc);
  } else {
    SpmCache cache = build_spm_cache(inst);
    d = build_diagram(inst, order, farthest, farthest, cache);
  }
  EquivalenceReport rep = check_equivalence(inst, d, samples, seed);
  Json j;
  j["order"] = d.order;
  j["samples"] = rep.samples;
  j["mismatches"] = rep.mismatches;
  j["degenerate"] = rep.degenerate;
  std::cout << j.dump(2) << "\n";
  if (!rep.ok()) {
    std::cerr << "mismatch at (" << rat_str(rep.first_point.x) << ", "
              << rat_str(rep.first_point.y) << "): diagram " << ids_str(rep.first_diagram)
              << ", reference " << ids_str(rep.first_oracle) << "\n";
    return 1;
  }
  return 0;
}

int cmd_generate(const std::vector<long long>& random_args,
                 const std::vector<long long>& worst_args, const std::string& nu_text,
                 const std::string& out) {
  Instance inst;
  if (!random_args.empty()) {
    inst = generate_random(static_cast<int>(random_args[0]), static_cast<int>(random_args[1]),
                           static_cast<unsigned long long>(random_args[2]));
  } else {
    auto nu = rat_parse(nu_text);
    if (!nu) throw IoError("bad rational \"" + nu_text + "\" for --nu");
    WorstCaseParams wp;
    wp.k = static_cast<int>(worst_args[0]);
    wp.c = static_cast<int>(worst_args[1]);
    wp.n = static_cast<int>(worst_args[2]);
    wp.nu = *nu;
    inst = generate_worst_case(wp);
  }
  emit(out, instance_text(inst));
  return 0;
}

int cmd_stats(const std::string& path, int order, bool farthest, const std::string& out) {
  Instance inst = load_instance(path);
  SpmCache cache = build_spm_cache(inst);
  OrderKDiagram d = build_diagram(inst, order, farthest, farthest, cache);
  StatsReport st = stats(d, inst, &cache);
  emit(out, stats_json(st, d).dump(2) + "\n");
  return 0;
}

int cmd_spm(const std::string& path, int site, const std::string& out, const std::string& svg) {
  Instance inst = load_instance(path);
  if (site < 0 || site >= static_cast<int>(inst.sites.size()))
    throw std::invalid_argument("site index out of range");
  ShortestPathMap spm = build_spm(inst.sites[static_cast<size_t>(site)], inst.net, inst.box, site);

  Json j;
  j["site"] = site;
  j["location"] = detail::point_json(spm.site);
  j["nu"] = rat_str(inst.net.nu);
  Json needles = Json::array();
  for (const Needle& n : spm.needles()) {
    Json jn;
    jn["anchor"] = detail::point_json(n.anchor);
    jn["tip"] = detail::point_json(n.tip);
    jn["weight"] = rat_str(n.weight);
    needles.push_back(std::move(jn));
  }
  j["needles"] = std::move(needles);
  Json cells = Json::array();
  const PlanarSubdivision& sub = spm.sub();
  for (size_t f = 0; f < sub.face.size(); ++f) {
    if (sub.face[f].unbounded) continue;
    Json jc;
    jc["predecessor"] =
        detail::point_json(spm.anchors[static_cast<size_t>(sub.face[f].label.ids.at(0))]);
    Json rings = Json::array();
    for (const auto& ring : sub.face_cycles(static_cast<int>(f)))
      rings.push_back(detail::points_json(ring));
    jc["rings"] = std::move(rings);
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  emit(out, j.dump(2) + "\n");
  if (!svg.empty()) spill(svg, svg_spm(spm, inst.net));
  return 0;
}

int cmd_distance(const std::string& path, const std::vector<std::string>& coords) {
  Instance inst = load_instance(path);
  Rat v[4];
  for (int i = 0; i < 4; ++i) {
    auto q = rat_parse(coords[static_cast<size_t>(i)]);
    if (!q) throw IoError("bad rational \"" + coords[static_cast<size_t>(i)] + "\"");
    v[i] = *q;
  }
  Point a{v[0], v[1]}, b{v[2], v[3]};
  Json j;
  j["from"] = detail::point_json(a);
  j["to"] = detail::point_json(b);
  j["distance"] = rat_str(city_distance(a, b, inst.net));
  j["l1_distance"] = rat_str(l1_distance(a, b));
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearest- and farthest-site diagrams under a transport-network metric"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "worker threads (results are identical for any value)")
      ->envname("CITYVOR_THREADS");

  std::string v_path;
  CLI::App* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("path", v_path, "instance file")->required();

  std::string vo_path, vo_out, vo_svg;
  int vo_k = 0;
  bool vo_far = false, vo_dc = false;
  CLI::App* voronoi = app.add_subcommand("voronoi", "Compute a diagram and write its document");
  voronoi->add_option("path", vo_path, "instance file")->required();
  CLI::Option* vo_opt_k = voronoi->add_option("-k,--order", vo_k, "diagram order");
  CLI::Option* vo_opt_far =
      voronoi->add_flag("--farthest", vo_far, "farthest-site diagram (order n-1)");
  voronoi->add_flag("--dc", vo_dc, "build the farthest diagram by divide and conquer")
      ->needs(vo_opt_far);
  vo_opt_k->excludes(vo_opt_far);
  voronoi->add_option("-o,--out", vo_out, "diagram file (stdout when omitted)");
  voronoi->add_option("--svg", vo_svg, "also render to this SVG file");

  std::string ch_path, ch_against;
  int ch_k = 0, ch_samples = 500;
  unsigned long long ch_seed = 1;
  bool ch_far = false;
  CLI::App* check = app.add_subcommand("check", "Compare diagram labels against the reference ranking");
  check->add_option("path", ch_path, "instance file")->required();
  CLI::Option* ch_opt_k = check->add_option("-k,--order", ch_k, "diagram order");
  CLI::Option* ch_opt_far = check->add_flag("--farthest", ch_far, "check the farthest diagram");
  ch_opt_k->excludes(ch_opt_far);
  check->add_option("--samples", ch_samples, "sample point count")->check(CLI::NonNegativeNumber);
  check->add_option("--seed", ch_seed, "sampling seed");
  check->add_option("--against", ch_against, "check a stored diagram file instead of recomputing");

  std::vector<long long> g_random, g_worst;
  std::string g_nu = "1000", g_out;
  CLI::App* generate = app.add_subcommand("generate", "Write an instance file");
  CLI::Option* g_opt_r =
      generate->add_option("--random", g_random, "sites, network vertices, seed")->expected(3);
  CLI::Option* g_opt_w =
      generate->add_option("--worst-case", g_worst, "order, network vertices, sites")->expected(3);
  g_opt_r->excludes(g_opt_w);
  generate->add_option("--nu", g_nu, "network speed for --worst-case");
  generate->add_option("-o,--out", g_out, "instance file (stdout when omitted)");

  std::string st_path, st_out;
  int st_k = 0;
  bool st_far = false;
  CLI::App* statsc = app.add_subcommand("stats", "Structural counts of a diagram");
  statsc->add_option("path", st_path, "instance file")->required();
  CLI::Option* st_opt_k = statsc->add_option("-k,--order", st_k, "diagram order");
  CLI::Option* st_opt_far = statsc->add_flag("--farthest", st_far, "farthest-site diagram");
  st_opt_k->excludes(st_opt_far);
  statsc->add_option("-o,--out", st_out, "report file (stdout when omitted)");

  std::string sp_path, sp_out, sp_svg;
  int sp_site = 0;
  CLI::App* spmc = app.add_subcommand("spm", "Dump one site's shortest path map");
  spmc->add_option("path", sp_path, "instance file")->required();
  spmc->add_option("--site", sp_site, "site index")->required();
  spmc->add_option("-o,--out", sp_out, "map file (stdout when omitted)");
  spmc->add_option("--svg", sp_svg, "also render to this SVG file");

  std::string d_path;
  std::vector<std::string> d_coords;
  CLI::App* dist = app.add_subcommand("distance", "Travel time between two points");
  dist->add_option("path", d_path, "instance file")->required();
  dist->add_option("coords", d_coords, "x1 y1 x2 y2")->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(v_path);
    if (voronoi->parsed()) {
      if (!vo_far && vo_opt_k->count() == 0) {
        std::cerr << "voronoi: give --order or --farthest\n";
        return 2;
      }
      return cmd_voronoi(vo_path, vo_k, vo_far, vo_dc, vo_out, vo_svg);
    }
    if (check->parsed()) {
      if (!ch_far && ch_opt_k->count() == 0 && ch_against.empty()) {
        std::cerr << "check: give --order, --farthest or --against\n";
        return 2;
      }
      return cmd_check(ch_path, ch_opt_k->count() ? ch_k : 0, ch_far, ch_samples, ch_seed,
                       ch_against);
    }
    if (generate->parsed()) {
      if (g_random.empty() && g_worst.empty()) {
        std::cerr << "generate: give --random or --worst-case\n";
        return 2;
      }
      return cmd_generate(g_random, g_worst, g_nu, g_out);
    }
    if (statsc->parsed()) {
      if (!st_far && st_opt_k->count() == 0) {
        std::cerr << "stats: give --order or --farthest\n";
        return 2;
      }
      return cmd_stats(st_path, st_k, st_far, st_out);
    }
    if (spmc->parsed()) return cmd_spm(sp_path, sp_site, sp_out, sp_svg);
    if (dist->parsed()) return cmd_distance(d_path, d_coords);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegeneracyError& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
