#include "homlab/reduction.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "homlab/error.hpp"
#include "homlab/graph_io.hpp"
#include "homlab/hom.hpp"

namespace homlab {

std::string FunctorPipeline::label() const {
  std::string out;
  for (const auto& s : steps) out += (out.empty() ? "" : ",") + s.label;
  return out;
}

FunctorPipeline parse_pipeline(std::string_view text) {
  FunctorPipeline p;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto tag = text.substr(0, comma);
    if (tag.empty()) fail(ErrorCode::parse_error, "empty step in pipeline");
    p.steps.push_back(parse_step(tag));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) fail(ErrorCode::parse_error, "trailing comma in pipeline");
  }
  return p;
}

FunctorPipeline right_adjoint_pipeline(const FunctorPipeline& p) {
  FunctorPipeline r;
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) r.steps.push_back(right_adjoint(*it));
  return r;
}

Digraph reduce_instance(const Digraph& i, const FunctorPipeline& p) {
  Digraph current = i;
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    try {
      current = apply_step(p.steps[s], current);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::size_limit) throw;
      fail(ErrorCode::pipeline_error,
           "stage " + std::to_string(s + 1) + " (" + p.steps[s].label + "): " + e.what());
    }
  }
  return current;
}

ReductionSpec ReductionSpec::make(FunctorPipeline pipeline, Digraph h1, Digraph g1, Digraph h2,
                                  Digraph g2) {
  if (!has_hom(h1, g1)) fail(ErrorCode::invalid_input, "template promise h1 -> g1 fails");
  if (!has_hom(h2, g2)) fail(ErrorCode::invalid_input, "template promise h2 -> g2 fails");
  return {std::move(pipeline), std::move(h1), std::move(g1), std::move(h2), std::move(g2)};
}

ReductionFile read_reduction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::invalid_input, "cannot open " + path);
  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string key, value, extra;
    if (!(words >> key)) continue;
    if (!(words >> value) || (words >> extra)) fail(ErrorCode::parse_error, "bad line: " + line);
    if (!fields.emplace(key, value).second) fail(ErrorCode::parse_error, "repeated key " + key);
  }
  for (const char* key : {"pipeline", "h1", "g1", "h2", "g2"})
    if (!fields.count(key)) fail(ErrorCode::parse_error, std::string("missing key ") + key);
  for (const auto& [key, value] : fields)
    if (key != "pipeline" && key != "gamma" && key != "h1" && key != "g1" && key != "h2" &&
        key != "g2")
      fail(ErrorCode::parse_error, "unknown key " + key);
  ReductionFile file{ReductionSpec::make(parse_pipeline(fields["pipeline"]),
                                         parse_graph_spec(fields["h1"]),
                                         parse_graph_spec(fields["g1"]),
                                         parse_graph_spec(fields["h2"]),
                                         parse_graph_spec(fields["g2"])),
                     std::nullopt};
  if (fields.count("gamma")) file.gamma = parse_pipeline(fields["gamma"]);
  return file;
}

std::string ReductionReport::status() const {
  const bool failed = h1_to_gamma_h2 == false || gamma_g2_to_g1 == false ||
                      !completeness_failures.empty() || !soundness_failures.empty();
  if (failed) return "fail";
  if (!h1_to_gamma_h2 || !gamma_g2_to_g1 || skipped > 0) return "partial";
  return "pass";
}

namespace {

std::optional<bool> capped_hom(const Digraph& source, const std::function<Digraph()>& target) {
  try {
    return has_hom(source, target());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::size_limit) throw;
    return std::nullopt;
  }
}

std::optional<bool> capped_hom_from(const std::function<Digraph()>& source, const Digraph& target) {
  try {
    return has_hom(source(), target);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::size_limit) throw;
    return std::nullopt;
  }
}

}  // namespace

ReductionReport verify_reduction_conditions(const ReductionSpec& r, const FunctorPipeline& gamma,
                                            std::size_t max_vertices, std::size_t random_samples,
                                            std::uint64_t seed) {
  ReductionReport report;
  report.pipeline = r.pipeline.label();
  report.gamma = gamma.label();
  report.h1_to_gamma_h2 = capped_hom(r.h1, [&] { return reduce_instance(r.h2, gamma); });
  report.gamma_g2_to_g1 = capped_hom_from([&] { return reduce_instance(r.g2, gamma); }, r.g1);

  std::vector<Digraph> pool = connected_graphs(std::min<std::size_t>(max_vertices, 6));
  const bool undirected = !r.pipeline.steps.empty() && r.pipeline.steps.front().needs_undirected();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(max_vertices, 1));
  std::uniform_int_distribution<std::size_t> density(0, kSampleDensities.size() - 1);
  for (std::size_t s = 0; s < random_samples; ++s) {
    const std::size_t n = size(rng);
    const double p = kSampleDensities[density(rng)];
    pool.push_back(undirected ? random_graph(n, p, rng) : random_digraph(n, p, rng));
  }

  struct Outcome {
    bool skipped = false, yes = false, no_side = false;
    std::string completeness, soundness;
  };
  std::vector<Outcome> outcomes(pool.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(pool.size()); ++idx) {
    try {
      const Digraph& inst = pool[idx];
      Outcome& o = outcomes[idx];
      try {
        const Digraph image = reduce_instance(inst, r.pipeline);
        const bool in_yes = has_hom(inst, r.h1);
        o.yes = in_yes;
        if (in_yes && !has_hom(image, r.h2)) o.completeness = edge_list_string(inst);
        const bool image_not_no = has_hom(image, r.g2);
        o.no_side = image_not_no;
        if (image_not_no && !has_hom(inst, r.g1)) o.soundness = edge_list_string(inst);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::size_limit) throw;
        o = Outcome{};
        o.skipped = true;
      }
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  for (const auto& o : outcomes) {
    if (o.skipped) {
      ++report.skipped;
      continue;
    }
    ++report.instances;
    report.yes_instances += o.yes;
    report.no_side_instances += o.no_side;
    if (!o.completeness.empty()) report.completeness_failures.push_back(o.completeness);
    if (!o.soundness.empty()) report.soundness_failures.push_back(o.soundness);
  }
  return report;
}

std::vector<Digraph> connected_graphs(std::size_t max_vertices) {
  if (max_vertices > 6) fail(ErrorCode::size_limit, "graph catalogue stops at 6 vertices");
  std::vector<Digraph> out;
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<std::vector<int>> pair_id(n, std::vector<int>(n, -1));
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        pair_id[u][v] = pair_id[v][u] = static_cast<int>(pairs.size());
        pairs.emplace_back(u, v);
      }
    std::vector<std::vector<Vertex>> perms;
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    const std::uint32_t masks = std::uint32_t{1} << pairs.size();
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
      bool least = true;
      for (const auto& p : perms) {
        std::uint32_t image = 0;
        for (std::size_t e = 0; e < pairs.size(); ++e)
          if (mask >> e & 1) image |= std::uint32_t{1} << pair_id[p[pairs[e].first]][p[pairs[e].second]];
        if (image < mask) {
          least = false;
          break;
        }
      }
      if (!least) continue;
      std::vector<Arc> edges;
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if (mask >> e & 1) edges.push_back({pairs[e].first, pairs[e].second});
      Digraph g = Digraph::from_edges(n, edges);
      if (is_connected(g)) out.push_back(std::move(g));
    }
  }
  return out;
}

Digraph sub_delta_r_clique(std::size_t n) { return sub(arc_right_adjoint(make_clique(n))); }

namespace {

std::size_t pair_position(const std::vector<std::pair<VertexMask, VertexMask>>& pairs,
                          std::pair<VertexMask, VertexMask> key) {
  const auto it = std::lower_bound(pairs.begin(), pairs.end(), key);
  if (it == pairs.end() || *it != key) fail(ErrorCode::internal_consistency, "missing (S,T) pair");
  return static_cast<std::size_t>(it - pairs.begin());
}

std::vector<VertexMask> middle_layer(std::size_t n) {
  std::vector<VertexMask> out;
  for (VertexMask s = 0; s < (VertexMask{1} << n); ++s)
    if (static_cast<std::size_t>(std::popcount(s)) == n / 2) out.push_back(s);
  return out;
}

}  // namespace

VertexMask symmetric_chain_root(VertexMask s, std::size_t n) {
  // Members are closing brackets, non-members opening ones. Unmatched members
  // all precede unmatched non-members; the chain root drops the unmatched members.
  std::vector<std::size_t> open;
  VertexMask root = s;
  for (std::size_t i = 0; i < n; ++i) {
    if (s >> i & 1) {
      if (open.empty()) {
        root &= ~(VertexMask{1} << i);
      } else {
        open.pop_back();
      }
    } else {
      open.push_back(i);
    }
  }
  return root;
}

PoljakRodlCertificates poljak_rodl_certificates(std::size_t n, std::size_t cap) {
  if (n == 0) fail(ErrorCode::invalid_parameter, "n must be positive");
  if (n > cap) fail(ErrorCode::size_limit, "n above the configured cap");
  PoljakRodlCertificates c;
  c.b = central_binomial_u64(static_cast<unsigned>(n));
  const Digraph kn = make_clique(n);
  const auto pairs = arc_right_adjoint_vertices(kn);
  c.graph = sub(arc_right_adjoint(kn));
  const VertexMask all = (VertexMask{1} << n) - 1;
  for (VertexMask s : middle_layer(n))
    c.clique_embedding.push_back(static_cast<Vertex>(pair_position(pairs, {s, all & ~s})));
  std::vector<VertexMask> roots;
  for (VertexMask s = 0; s <= all; ++s) roots.push_back(symmetric_chain_root(s, n));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  if (roots.size() != c.b) fail(ErrorCode::internal_consistency, "chain count differs from b(n)");
  for (const auto& [s, t] : pairs) {
    const auto root = symmetric_chain_root(s, n);
    c.coloring.push_back(
        static_cast<Vertex>(std::lower_bound(roots.begin(), roots.end(), root) - roots.begin()));
  }
  return c;
}

std::array<Vertex, 3> delta_delta_triple(const Digraph& k4, Vertex b) {
  const Digraph d = arc_digraph(k4);
  const Arc outer = d.arcs().at(b);
  const Arc first = k4.arcs().at(outer.tail);
  const Arc second = k4.arcs().at(outer.head);
  return {first.tail, first.head, second.head};
}

VertexMap delta_delta_k4_coloring() {
  const Digraph k4 = make_clique(4);
  const Digraph d = arc_digraph(k4);
  VertexMap h(d.arc_count());
  for (Vertex b = 0; b < d.arc_count(); ++b) {
    const Arc outer = d.arcs()[b];
    const Vertex i = k4.arcs()[outer.tail].tail;
    const Vertex j = k4.arcs()[outer.tail].head;
    const Vertex k = k4.arcs()[outer.head].head;
    if (j < 3) {
      h[b] = j;
    } else {
      Vertex c = 0;
      while (c == i || c == k) ++c;
      h[b] = c;
    }
  }
  return h;
}

DeltaIterations min_delta_iterations_to_3col(const Digraph& d, std::size_t cap,
                                             std::uint64_t vertex_cap) {
  DeltaIterations result;
  const Digraph k3 = make_clique(3);
  Digraph current = d;
  for (std::size_t i = 0; i <= cap; ++i) {
    if (current.vertex_count() > vertex_cap) {
      result.hit_cap = true;
      return result;
    }
    result.tried_up_to = i;
    if (has_hom(current, k3)) {
      result.i = i;
      return result;
    }
    if (i < cap) current = arc_digraph(current);
  }
  return result;
}

CliqueSandwich clique_sandwich(std::size_t n, std::size_t cap) {
  if (n == 0) fail(ErrorCode::invalid_parameter, "n must be positive");
  if (n > cap) fail(ErrorCode::size_limit, "n above the configured cap");
  CliqueSandwich c;
  c.n = n;
  c.b = central_binomial_u64(static_cast<unsigned>(n));
  const Digraph kn = make_clique(n);
  const auto pairs = arc_right_adjoint_vertices(kn);
  const Digraph dr = arc_right_adjoint(kn);
  const VertexMask all = (VertexMask{1} << n) - 1;
  for (VertexMask s : middle_layer(n))
    c.lower.push_back(static_cast<Vertex>(pair_position(pairs, {s, all & ~s})));
  for (const auto& [s, t] : pairs) c.upper.push_back(static_cast<Vertex>(s));
  c.lower_ok = is_hom(make_clique(c.b), dr, c.lower);
  c.upper_ok = is_hom(dr, make_clique(std::size_t{1} << n), c.upper);
  return c;
}

ChiDeltaCheck chi_delta_formula_check(const Digraph& g, std::size_t n_max) {
  if (!g.is_symmetric()) fail(ErrorCode::invalid_input, "the formula is about undirected graphs");
  if (g.has_loop()) fail(ErrorCode::invalid_input, "graph has a loop");
  ChiDeltaCheck c;
  c.chi_g = chromatic_number(g);
  c.chi_delta = chromatic_number(arc_digraph(g));
  for (std::size_t n = 1; n <= n_max; ++n)
    if (c.chi_g <= central_binomial_u64(static_cast<unsigned>(n))) {
      c.formula = n;
      break;
    }
  if (c.formula == 0) fail(ErrorCode::size_limit, "chi(G) above b(n_max)");
  return c;
}

}  // namespace homlab
