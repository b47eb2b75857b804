#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "homlab/box_complex.hpp"
#include "homlab/circle_map.hpp"
#include "homlab/error.hpp"
#include "homlab/functors.hpp"
#include "homlab/graph_io.hpp"
#include "homlab/hom.hpp"
#include "homlab/minion.hpp"
#include "homlab/reduction.hpp"

namespace homlab::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kUsage =
    "usage: homlab <hom|chrom|poly|degrees|complex|functor|adjoint-check|verify> [options]"
    " (see --help)\n";

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::uint64_t cap = 0;  // 0: per-command default
  std::string out_path;
  bool all = false;
  bool expand = false;

  std::string from, to, graph, map = "auto", apply, left, right, pair, spec, lemma, export_kind = "json";
  std::size_t arity = 1, samples = 0, max_vertices = 5, n = 0;
};

std::uint64_t cap_or(const Options& o, std::uint64_t fallback) { return o.cap ? o.cap : fallback; }

Json map_json(const VertexMap& m) { return Json(std::vector<Vertex>(m.begin(), m.end())); }

std::string join(const VertexMap& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + std::to_string(m[i]);
  return s;
}

/// Result text plus exit code.
struct Outcome {
  std::string text;
  int code = 0;
};

Outcome emit(const Options& o, const Json& j, const std::string& human, int code) {
  return {o.json ? j.dump(2) + "\n" : human, code};
}

Outcome cmd_hom(const Options& o) {
  const Digraph h = parse_graph_spec(o.from);
  const Digraph g = parse_graph_spec(o.to);
  if (o.all) {
    const auto homs = all_homs(h, g, cap_or(o, caps::kHomResults));
    Json list = Json::array();
    std::string text = "count: " + std::to_string(homs.size()) + "\n";
    for (const auto& m : homs) {
      list.push_back(map_json(m));
      text += join(m) + "\n";
    }
    return emit(o, Json{{"count", homs.size()}, {"homs", list}}, text, homs.empty() ? 1 : 0);
  }
  const auto w = find_least_hom(h, g);
  if (!w) return emit(o, Json{{"hom", nullptr}}, "no homomorphism\n", 1);
  return emit(o, Json{{"hom", map_json(*w)}}, "hom: " + join(*w) + "\n", 0);
}

Outcome cmd_chrom(const Options& o) {
  const Digraph g = parse_graph_spec(o.graph);
  if (g.has_loop()) {
    return emit(o, Json{{"chromatic_number", nullptr}, {"reason", "loop"}},
                "no proper colouring (graph has a loop)\n", 1);
  }
  const std::size_t chi = chromatic_number(g);
  const std::size_t omega = clique_number(g);
  return emit(o, Json{{"chromatic_number", chi}, {"clique_number", omega}},
              std::to_string(chi) + "\n", 0);
}

Json poly_json(const Polymorphism& f, const std::string& from, const std::string& to) {
  const auto& t = f.table();
  return Json{{"source", from}, {"target", to}, {"arity", f.arity()},
              {"table", std::vector<Vertex>(t.begin(), t.end())}};
}

Outcome cmd_poly(const Options& o) {
  const Digraph h = parse_graph_spec(o.from);
  const Digraph g = parse_graph_spec(o.to);
  if (o.samples > 0) {
    Json list = Json::array();
    std::string text;
    for (std::size_t i = 0; i < o.samples; ++i) {
      const auto f = sample_polymorphism(h, g, o.arity, o.seed + i);
      if (!f) return emit(o, Json{{"count", 0}, {"polymorphisms", Json::array()}}, "count: 0\n", 1);
      list.push_back(poly_json(*f, o.from, o.to));
      text += join(f->table()) + "\n";
    }
    return emit(o, Json{{"polymorphisms", list}}, text, 0);
  }
  const auto fs = enumerate_polymorphisms(h, g, o.arity, cap_or(o, caps::kHomResults));
  Json j{{"count", fs.size()}};
  std::string text = "count: " + std::to_string(fs.size()) + "\n";
  if (o.all) {
    Json list = Json::array();
    for (const auto& f : fs) {
      list.push_back(poly_json(f, o.from, o.to));
      text += join(f.table()) + "\n";
    }
    j["polymorphisms"] = list;
  }
  return emit(o, j, text, fs.empty() ? 1 : 0);
}

CircleMap choose_circle_map(const Digraph& g, const std::string& how) {
  const std::size_t n = g.vertex_count();
  if (how == "square-free") return CircleMap::square_free(g);
  if (how != "auto") {
    const auto colon = how.find(':');
    if (colon == std::string::npos) fail(ErrorCode::parse_error, "--map takes auto, square-free or p:q");
    const std::size_t p = std::stoul(how.substr(0, colon));
    const std::size_t q = std::stoul(how.substr(colon + 1));
    const CircleMap m = CircleMap::circular_clique(p, q);
    if (m.base().arcs() == g.arcs()) return m;
    const auto chart = find_least_hom(g, m.base());
    if (!chart) fail(ErrorCode::invalid_input, "target does not map to K" + how);
    return m.pull_back(g, *chart);
  }
  for (std::size_t q = 1; 2 * q < n; ++q)
    if (n < 4 * q && make_circular_clique(n, q).arcs() == g.arcs()) {
      const CircleMap m = CircleMap::circular_clique(n, q);
      return g == m.base() ? m : m.pull_back(g, [&] {
        VertexMap id(n);
        std::iota(id.begin(), id.end(), Vertex{0});
        return id;
      }());
    }
  if (n >= 5 && n % 2 == 1 && make_cycle(n).arcs() == g.arcs()) {
    const std::size_t q = (n - 1) / 2;
    VertexMap chart(n);
    for (Vertex i = 0; i < n; ++i) chart[i] = static_cast<Vertex>((i * q) % n);
    return CircleMap::circular_clique(n, q).pull_back(g, chart);
  }
  if (g.is_symmetric() && !g.has_loop() && !is_bipartite(g) && is_square_free(g)) {
    return CircleMap::square_free(g);
  }
  const CircleMap k3 = CircleMap::circular_clique(3, 1);
  if (const auto chart = find_least_hom(g, k3.base())) return k3.pull_back(g, *chart);
  fail(ErrorCode::invalid_input, "no circle map found for the target; pass --map");
}

Outcome cmd_degrees(const Options& o) {
  const Digraph h = parse_graph_spec(o.from);
  const Digraph g = parse_graph_spec(o.to);
  const CircleMap s = choose_circle_map(g, o.map);
  const auto generator = generator_loop(h);
  const long long bound = compute_bound_n(h, s.base(), s);
  std::vector<Polymorphism> fs;
  std::vector<std::uint64_t> ids;
  if (o.samples > 0) {
    for (std::size_t i = 0; i < o.samples; ++i) {
      auto f = sample_polymorphism(h, s.base(), o.arity, o.seed + i);
      if (!f) break;
      fs.push_back(std::move(*f));
      ids.push_back(i);
    }
  } else {
    fs = enumerate_polymorphisms(h, s.base(), o.arity, cap_or(o, caps::kHomResults));
    ids.resize(fs.size());
    std::iota(ids.begin(), ids.end(), std::uint64_t{0});
  }
  const auto vectors = degree_vectors(fs, generator, s);
  Json list = Json::array();
  std::string text = "k: " + std::to_string(generator.size()) + "\nN: " + std::to_string(bound) + "\n";
  bool all_member = true;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const bool member = z_leq_n_member(vectors[i].c, bound);
    all_member = all_member && member;
    list.push_back(Json{{"table_index", ids[i]}, {"c", vectors[i].c.c}});
    text += std::to_string(ids[i]) + ":";
    for (long long c : vectors[i].c.c) text += " " + std::to_string(c);
    text += "\n";
  }
  Json j{{"k", generator.size()}, {"arity", o.arity}, {"vectors", list}, {"N", bound}};
  return emit(o, j, text, all_member && !fs.empty() ? 0 : 1);
}

Outcome cmd_complex(const Options& o) {
  const BoxComplex box(parse_graph_spec(o.graph));
  if (o.export_kind == "off") {
    std::ostringstream off;
    write_off(off, box);
    return {off.str(), 0};
  }
  if (o.export_kind != "json") fail(ErrorCode::parse_error, "--export takes json or off");
  Json vertices = Json::array();
  for (const Arc& a : box.vertices()) vertices.push_back({a.tail, a.head});
  Json faces = Json::array();
  for (const Face& f : box.maximal_faces()) faces.push_back(f);
  Json j{{"vertices", vertices}, {"involution", box.involution()}, {"maximal_faces", faces}};
  if (o.expand) j["faces"] = box.all_faces(cap_or(o, caps::kMaximalFaces));
  if (o.json) return {j.dump(2) + "\n", 0};
  std::string text = "vertices: " + std::to_string(box.vertices().size()) +
                     "\nmaximal faces: " + std::to_string(box.maximal_faces().size()) + "\n";
  for (const Face& f : box.maximal_faces()) {
    std::string line;
    for (std::size_t v : f) {
      const Arc a = box.vertices()[v];
      line += (line.empty() ? "" : " ") + std::to_string(a.tail) + ">" + std::to_string(a.head);
    }
    text += line + "\n";
  }
  if (o.expand) text += "faces: " + std::to_string(box.all_faces(cap_or(o, caps::kMaximalFaces)).size()) + "\n";
  return {text, 0};
}

Outcome cmd_functor(const Options& o, std::ostream& out_file_sink, bool& wrote_file) {
  const Digraph g = parse_graph_spec(o.graph);
  const auto p = parse_pipeline(o.apply);
  const Digraph r = reduce_instance(g, p);
  const std::string dgr = to_dgr_string(r);
  if (!o.out_path.empty()) {
    out_file_sink << dgr;
    wrote_file = true;
  }
  Json j{{"pipeline", p.label()}, {"vertices", r.vertex_count()}, {"arcs", r.arc_count()},
         {"undirected", r.undirected()}};
  if (o.out_path.empty()) j["graph"] = dgr;
  std::string text = o.out_path.empty() ? dgr
                                        : "vertices: " + std::to_string(r.vertex_count()) +
                                              "\narcs: " + std::to_string(r.arc_count()) + "\n";
  return emit(o, j, text, 0);
}

Json adjoint_json(const AdjointReport& r) {
  return Json{{"left", r.left},
              {"right", r.right},
              {"samples", r.samples},
              {"checked", r.checked},
              {"skipped", r.skipped},
              {"positive", r.positive},
              {"counterexamples", r.counterexamples},
              {"fact_failures", r.fact_failures},
              {"status", r.pass() ? (r.skipped ? "partial" : "pass") : "fail"}};
}

std::string adjoint_text(const AdjointReport& r) {
  std::ostringstream t;
  t << r.left << " -| " << r.right << ": " << (r.pass() ? "pass" : "fail") << "\n"
    << "samples " << r.samples << ", checked " << r.checked << ", skipped " << r.skipped
    << ", both sides true " << r.positive << "\n"
    << "fact failures " << r.fact_failures[0] << " " << r.fact_failures[1] << " "
    << r.fact_failures[2] << " " << r.fact_failures[3] << "\n";
  for (const auto& c : r.counterexamples) t << c << "\n";
  return t.str();
}

AdjointReport run_adjoint(const std::string& left, const std::string& right, const Options& o) {
  const FunctorStep l = parse_step(left);
  const FunctorStep rt = right.empty() ? right_adjoint(l) : parse_step(right);
  const std::size_t samples = o.samples ? o.samples : 100;
  return check_adjoint(l, rt, samples, o.max_vertices, o.seed);
}

Outcome cmd_adjoint(const Options& o) {
  const auto r = run_adjoint(o.left, o.right, o);
  return emit(o, adjoint_json(r), adjoint_text(r), r.pass() && r.skipped == 0 ? 0 : 1);
}

Outcome verdict(const Options& o, Json j, bool pass, const std::string& details) {
  j["status"] = pass ? "pass" : "fail";
  return emit(o, j, std::string(pass ? "pass" : "fail") + "\n" + details, pass ? 0 : 1);
}

Outcome cmd_verify(const Options& o) {
  const std::string& name = o.lemma;
  Json j{{"lemma", name}};
  if (name == "poljak-rodl") {
    const std::size_t n = o.n ? o.n : 3;
    const auto c = poljak_rodl_certificates(n);
    const bool lower = is_hom(make_clique(c.b), c.graph, c.clique_embedding);
    const bool upper = is_hom(c.graph, make_clique(c.b), c.coloring);
    j["n"] = n;
    j["b"] = c.b;
    j["clique_embedding"] = map_json(c.clique_embedding);
    j["coloring"] = map_json(c.coloring);
    j["clique_valid"] = lower;
    j["coloring_valid"] = upper;
    return verdict(o, j, lower && upper,
                   "b(" + std::to_string(n) + ") = " + std::to_string(c.b) + "\n");
  }
  if (name == "delta-delta-k4") {
    const VertexMap h = delta_delta_k4_coloring();
    const Digraph dd = arc_digraph(arc_digraph(make_clique(4)));
    const bool ok = is_hom(dd, make_clique(3), h);
    j["vertices"] = dd.vertex_count();
    j["coloring"] = map_json(h);
    return verdict(o, j, ok, "36-vertex colouring of delta delta K4 into K3\n");
  }
  if (name == "chi-delta") {
    const auto c = chi_delta_formula_check(parse_graph_spec(o.graph));
    j["chi"] = c.chi_g;
    j["chi_delta"] = c.chi_delta;
    j["formula"] = c.formula;
    return verdict(o, j, c.holds(),
                   "chi(G) = " + std::to_string(c.chi_g) + ", chi(delta G) = " +
                       std::to_string(c.chi_delta) + ", min{n : chi(G) <= b(n)} = " +
                       std::to_string(c.formula) + "\n");
  }
  if (name == "clique-sandwich") {
    const std::size_t n = o.n ? o.n : 3;
    const auto c = clique_sandwich(n);
    j["n"] = n;
    j["b"] = c.b;
    j["lower"] = map_json(c.lower);
    j["upper"] = map_json(c.upper);
    j["lower_valid"] = c.lower_ok;
    j["upper_valid"] = c.upper_ok;
    return verdict(o, j, c.lower_ok && c.upper_ok,
                   "K" + std::to_string(c.b) + " -> deltaR K" + std::to_string(n) + " -> K" +
                       std::to_string(std::size_t{1} << n) + "\n");
  }
  if (name == "min-delta-iter") {
    const auto r = min_delta_iterations_to_3col(parse_graph_spec(o.graph), cap_or(o, 4));
    j["i"] = r.i ? Json(*r.i) : Json(nullptr);
    j["tried_up_to"] = r.tried_up_to;
    j["hit_cap"] = r.hit_cap;
    const bool found = r.i.has_value();
    j["status"] = found ? "pass" : (r.hit_cap ? "partial" : "fail");
    const std::string text = found ? "i = " + std::to_string(*r.i) + "\n"
                                   : "none within cap (tried up to " +
                                         std::to_string(r.tried_up_to) + ")\n";
    return emit(o, j, text, found ? 0 : 1);
  }
  if (name == "adjoint") {
    const auto comma = o.pair.find(',');
    const std::string left = o.pair.substr(0, comma);
    const std::string right = comma == std::string::npos ? "" : o.pair.substr(comma + 1);
    const auto r = run_adjoint(left, right, o);
    Json a = adjoint_json(r);
    a["lemma"] = name;
    return emit(o, a, adjoint_text(r), r.pass() && r.skipped == 0 ? 0 : 1);
  }
  if (name == "reduction") {
    std::string path = o.spec;
    if (!path.empty() && path.front() == '@') path.erase(0, 1);
    const auto file = read_reduction_file(path);
    const auto gamma = file.gamma ? *file.gamma : right_adjoint_pipeline(file.spec.pipeline);
    const auto r = verify_reduction_conditions(file.spec, gamma, o.max_vertices,
                                               o.samples ? o.samples : 100, o.seed);
    auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
    j["pipeline"] = r.pipeline;
    j["gamma"] = r.gamma;
    j["h1_to_gamma_h2"] = opt(r.h1_to_gamma_h2);
    j["gamma_g2_to_g1"] = opt(r.gamma_g2_to_g1);
    j["instances"] = r.instances;
    j["yes_instances"] = r.yes_instances;
    j["skipped"] = r.skipped;
    j["completeness_failures"] = r.completeness_failures;
    j["soundness_failures"] = r.soundness_failures;
    j["status"] = r.status();
    std::ostringstream t;
    t << r.status() << "\n"
      << "instances " << r.instances << ", skipped " << r.skipped << "\n"
      << "completeness failures " << r.completeness_failures.size() << ", soundness failures "
      << r.soundness_failures.size() << "\n";
    return emit(o, j, t.str(), r.status() == "pass" ? 0 : 1);
  }
  fail(ErrorCode::parse_error, "unknown lemma '" + name + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"homlab: graph homomorphisms, polymorphisms and graph functors", "homlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--seed", o.seed, "Seed for every randomized step (default 0)");
  app.add_option("--cap", o.cap, "Result cap (meaning depends on the command)");
  app.add_option("--out", o.out_path, "Write the output to this file");
  app.add_flag("--all", o.all, "List every result instead of a summary");

  auto* hom = app.add_subcommand("hom", "Find a homomorphism");
  hom->add_option("--from", o.from, "Source graph")->required();
  hom->add_option("--to", o.to, "Target graph")->required();

  auto* chrom = app.add_subcommand("chrom", "Chromatic number");
  chrom->add_option("--graph", o.graph, "Graph")->required();

  auto* poly = app.add_subcommand("poly", "Polymorphisms H^n -> G");
  poly->add_option("--from", o.from, "H")->required();
  poly->add_option("--to", o.to, "G")->required();
  poly->add_option("--arity", o.arity, "n")->check(CLI::Range(1, 16));
  poly->add_option("--samples", o.samples, "Seeded samples instead of enumeration");

  auto* degrees = app.add_subcommand("degrees", "Degree vectors of polymorphisms");
  degrees->add_option("--from", o.from, "H (non-bipartite)")->required();
  degrees->add_option("--to", o.to, "G")->required();
  degrees->add_option("--arity", o.arity, "n")->check(CLI::Range(1, 16));
  degrees->add_option("--samples", o.samples, "Seeded samples instead of enumeration");
  degrees->add_option("--map", o.map, "Circle map on G: auto, square-free or p:q");

  auto* complex = app.add_subcommand("complex", "Box complex");
  complex->add_option("--graph", o.graph, "Graph")->required();
  complex->add_option("--export", o.export_kind, "json or off");
  complex->add_flag("--expand", o.expand, "Also list every face, not only the maximal ones");

  auto* functor = app.add_subcommand("functor", "Apply a functor pipeline");
  functor->add_option("--apply", o.apply, "Comma-separated steps")->required();
  functor->add_option("--graph", o.graph, "Input graph")->required();

  auto* adjoint = app.add_subcommand("adjoint-check", "Sample the adjunction law");
  adjoint->add_option("--left", o.left, "Left adjoint step")->required();
  adjoint->add_option("--right", o.right, "Right adjoint step (default: the known one)");
  adjoint->add_option("--samples", o.samples, "Number of samples (default 100)");
  adjoint->add_option("--max-vertices", o.max_vertices, "Sample size bound")->check(CLI::Range(1, 8));

  auto* verify = app.add_subcommand("verify", "Check a lemma");
  verify->add_option("lemma", o.lemma,
                     "poljak-rodl, delta-delta-k4, chi-delta, clique-sandwich, min-delta-iter, "
                     "adjoint, reduction")
      ->required();
  verify->add_option("--n", o.n, "n");
  verify->add_option("--graph", o.graph, "Graph");
  verify->add_option("--pair", o.pair, "left[,right]");
  verify->add_option("--spec", o.spec, "@file");
  verify->add_option("--samples", o.samples, "Number of samples");
  verify->add_option("--max-vertices", o.max_vertices, "Instance size bound")->check(CLI::Range(1, 6));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << kUsage;
    return 2;
  }

  try {
    std::ofstream file;
    if (!o.out_path.empty()) {
      file.open(o.out_path);
      if (!file) fail(ErrorCode::invalid_input, "cannot write " + o.out_path);
    }
    Outcome result;
    bool wrote_file = false;
    if (hom->parsed()) result = cmd_hom(o);
    else if (chrom->parsed()) result = cmd_chrom(o);
    else if (poly->parsed()) result = cmd_poly(o);
    else if (degrees->parsed()) result = cmd_degrees(o);
    else if (complex->parsed()) result = cmd_complex(o);
    else if (functor->parsed()) result = cmd_functor(o, file, wrote_file);
    else if (adjoint->parsed()) result = cmd_adjoint(o);
    else result = cmd_verify(o);
    if (!o.out_path.empty() && !wrote_file) {
      file << result.text;
    } else {
      out << result.text;
    }
    return result.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::parse_error) err << kUsage;
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace homlab::cli
