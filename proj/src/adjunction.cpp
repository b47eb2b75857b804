#include <algorithm>
#include <exception>
#include <numeric>
#include <sstream>

#include "homlab/error.hpp"
#include "homlab/functors.hpp"
#include "homlab/graph_io.hpp"
#include "homlab/hom.hpp"

namespace homlab {

bool FunctorStep::needs_undirected() const {
  return kind == Kind::subdivide || kind == Kind::walk_power || kind == Kind::omega;
}

FunctorStep make_step(FunctorStep::Kind kind, std::size_t k,
                      std::shared_ptr<const PPFormula> formula) {
  using Kind = FunctorStep::Kind;
  FunctorStep step{kind, k, std::move(formula), {}};
  switch (kind) {
    case Kind::subdivide: step.label = "lambda:" + std::to_string(k); break;
    case Kind::walk_power: step.label = "gamma:" + std::to_string(k); break;
    case Kind::omega: step.label = "omega:" + std::to_string(k); break;
    case Kind::arc_digraph: step.label = "delta"; break;
    case Kind::arc_right_adjoint: step.label = "deltaR"; break;
    case Kind::sym: step.label = "sym"; break;
    case Kind::sub: step.label = "sub"; break;
    case Kind::gadget_replace: step.label = "gadget"; break;
    case Kind::pp_power: step.label = "pppower"; break;
  }
  if ((kind == Kind::subdivide || kind == Kind::walk_power || kind == Kind::omega) &&
      (k == 0 || k % 2 == 0)) {
    fail(ErrorCode::pipeline_error, step.label + ": k must be a positive odd number");
  }
  if ((kind == Kind::gadget_replace || kind == Kind::pp_power) && !step.formula) {
    fail(ErrorCode::pipeline_error, step.label + ": missing pp-formula");
  }
  return step;
}

FunctorStep parse_step(std::string_view tag) {
  using Kind = FunctorStep::Kind;
  const auto colon = tag.find(':');
  const std::string name(tag.substr(0, colon));
  const std::string arg = colon == std::string_view::npos ? "" : std::string(tag.substr(colon + 1));
  auto number = [&]() -> std::size_t {
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos || arg.size() > 9) {
      fail(ErrorCode::parse_error, "step " + name + " needs a numeric argument");
    }
    return std::stoul(arg);
  };
  auto formula = [&]() {
    if (arg.size() < 2 || arg[0] != '@') fail(ErrorCode::parse_error, "step " + name + " needs @file");
    return std::make_shared<const PPFormula>(read_pp_formula_file(arg.substr(1)));
  };
  auto no_arg = [&]() {
    if (colon != std::string_view::npos) fail(ErrorCode::parse_error, "step " + name + " takes no argument");
  };
  FunctorStep step;
  if (name == "lambda") {
    step = make_step(Kind::subdivide, number());
  } else if (name == "gamma") {
    step = make_step(Kind::walk_power, number());
  } else if (name == "omega") {
    step = make_step(Kind::omega, number());
  } else if (name == "delta") {
    no_arg();
    step = make_step(Kind::arc_digraph);
  } else if (name == "deltaR") {
    no_arg();
    step = make_step(Kind::arc_right_adjoint);
  } else if (name == "sym") {
    no_arg();
    step = make_step(Kind::sym);
  } else if (name == "sub") {
    no_arg();
    step = make_step(Kind::sub);
  } else if (name == "gadget") {
    step = make_step(Kind::gadget_replace, 1, formula());
  } else if (name == "pppower") {
    step = make_step(Kind::pp_power, 1, formula());
  } else {
    fail(ErrorCode::parse_error, "unknown functor '" + std::string(tag) + "'");
  }
  step.label = std::string(tag);
  return step;
}

Digraph apply_step(const FunctorStep& step, const Digraph& g) {
  using Kind = FunctorStep::Kind;
  if (step.needs_undirected() && !g.is_symmetric()) {
    fail(ErrorCode::pipeline_error, step.label + " needs an undirected graph");
  }
  switch (step.kind) {
    case Kind::subdivide: return subdivide(g, step.k);
    case Kind::walk_power: return walk_power(g, step.k);
    case Kind::omega: return omega(g, step.k);
    case Kind::arc_digraph: return arc_digraph(g);
    case Kind::arc_right_adjoint:
      if (2 * g.vertex_count() < 64 && (std::uint64_t{1} << (2 * g.vertex_count())) <= caps::kPairScan) {
        return arc_right_adjoint(g);
      }
      return arc_right_adjoint_closed(g);
    case Kind::sym: return sym(g);
    case Kind::sub: return sub(g);
    case Kind::gadget_replace:
      if (g.undirected() && !step.formula->symmetric) {
        fail(ErrorCode::pipeline_error, step.label + " on an undirected graph needs a symmetric gadget");
      }
      return gadget_replace(g, *step.formula);
    case Kind::pp_power: return pp_power(g, *step.formula);
  }
  fail(ErrorCode::internal_consistency, "unknown functor kind");
}

FunctorStep right_adjoint(const FunctorStep& step) {
  using Kind = FunctorStep::Kind;
  switch (step.kind) {
    case Kind::subdivide: return make_step(Kind::walk_power, step.k);
    case Kind::walk_power: return make_step(Kind::omega, step.k);
    case Kind::arc_digraph: return make_step(Kind::arc_right_adjoint);
    case Kind::sym: return make_step(Kind::sub);
    case Kind::gadget_replace: {
      FunctorStep right = make_step(Kind::pp_power, 1, step.formula);
      if (step.label.starts_with("gadget:")) right.label = "pppower:" + step.label.substr(7);
      return right;
    }
    default: break;
  }
  fail(ErrorCode::pipeline_error, step.label + " has no right adjoint here");
}

namespace {

std::vector<Vertex> find_walk(const Digraph& g, Vertex from, Vertex to, std::size_t length) {
  const std::size_t n = g.vertex_count();
  std::vector<Domain> layers(length + 1, Domain(n));
  layers[0].set(from);
  for (std::size_t t = 1; t <= length; ++t)
    for (auto u = layers[t - 1].find_first(); u != Domain::npos; u = layers[t - 1].find_next(u))
      for (Vertex w : g.out_neighbors(static_cast<Vertex>(u))) layers[t].set(w);
  if (!layers[length].test(to)) fail(ErrorCode::invalid_input, "no walk of the required length");
  std::vector<Vertex> walk(length + 1);
  walk[length] = to;
  for (std::size_t t = length; t-- > 0;) {
    for (auto u = layers[t].find_first(); u != Domain::npos; u = layers[t].find_next(u)) {
      if (g.has_arc(static_cast<Vertex>(u), walk[t + 1])) {
        walk[t] = static_cast<Vertex>(u);
        break;
      }
    }
  }
  return walk;
}

VertexMask image_mask(const VertexMap& h, std::span<const Vertex> vertices) {
  VertexMask m = 0;
  for (Vertex v : vertices) m |= VertexMask{1} << h[v];
  return m;
}

}  // namespace

VertexMap pull_back_hom(const FunctorStep& step, const Digraph& i, const Digraph& g,
                        const VertexMap& h) {
  using Kind = FunctorStep::Kind;
  if (!is_hom(apply_step(step, i), g, h)) {
    fail(ErrorCode::invalid_input, "map is not a homomorphism from the transformed instance");
  }
  const std::size_t n = i.vertex_count();
  switch (step.kind) {
    case Kind::subdivide: return VertexMap(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(n));
    case Kind::sym: return h;
    case Kind::walk_power: {
      if (g.vertex_count() > 64) fail(ErrorCode::size_limit, "target too large for Omega");
      const std::size_t l = (step.k - 1) / 2;
      VertexMap out(n);
      // reach[v] = N^t(v), advanced one step per level.
      std::vector<Domain> reach(n, Domain(n));
      for (Vertex v = 0; v < n; ++v) reach[v].set(v);
      std::vector<OmegaVertex> tuples(n);
      for (Vertex v = 0; v < n; ++v) tuples[v].a0 = h[v];
      for (std::size_t t = 1; t <= l; ++t) {
        for (Vertex v = 0; v < n; ++v) {
          Domain next(n);
          for (auto u = reach[v].find_first(); u != Domain::npos; u = reach[v].find_next(u))
            for (Vertex w : i.out_neighbors(static_cast<Vertex>(u))) next.set(w);
          reach[v] = std::move(next);
          VertexMask m = 0;
          for (auto u = reach[v].find_first(); u != Domain::npos; u = reach[v].find_next(u))
            m |= VertexMask{1} << h[u];
          tuples[v].sets.push_back(m);
        }
      }
      for (Vertex v = 0; v < n; ++v) out[v] = static_cast<Vertex>(omega_index(tuples[v], g.vertex_count()));
      return out;
    }
    case Kind::arc_digraph: {
      const auto pairs = arc_right_adjoint_vertices(g);
      VertexMap out(n);
      for (Vertex v = 0; v < n; ++v) {
        std::vector<Vertex> in_arcs, out_arcs;
        for (Vertex u : i.in_neighbors(v)) in_arcs.push_back(static_cast<Vertex>(*i.arc_index({u, v})));
        for (Vertex w : i.out_neighbors(v)) out_arcs.push_back(static_cast<Vertex>(*i.arc_index({v, w})));
        const std::pair<VertexMask, VertexMask> key{image_mask(h, in_arcs), image_mask(h, out_arcs)};
        const auto it = std::lower_bound(pairs.begin(), pairs.end(), key);
        if (it == pairs.end() || *it != key) fail(ErrorCode::internal_consistency, "(s,t) pair missing");
        out[v] = static_cast<Vertex>(it - pairs.begin());
      }
      return out;
    }
    case Kind::gadget_replace: {
      const GadgetLayout layout = gadget_layout(i, *step.formula);
      const std::size_t arity = step.formula->arity();
      VertexMap out(n);
      std::vector<Vertex> tuple(arity);
      for (Vertex v = 0; v < n; ++v) {
        for (std::size_t t = 0; t < arity; ++t) tuple[t] = h[layout.slot[v * arity + t]];
        out[v] = static_cast<Vertex>(tuple_index(tuple, g.vertex_count()));
      }
      return out;
    }
    default: break;
  }
  fail(ErrorCode::invalid_parameter, step.label + " has no pull-back converter");
}

VertexMap push_forward_hom(const FunctorStep& step, const Digraph& i, const Digraph& g,
                           const VertexMap& h) {
  using Kind = FunctorStep::Kind;
  const FunctorStep right = right_adjoint(step);
  if (!is_hom(i, apply_step(right, g), h)) {
    fail(ErrorCode::invalid_input, "map is not a homomorphism into the right adjoint");
  }
  switch (step.kind) {
    case Kind::sym: return h;
    case Kind::subdivide: {
      const Digraph lambda = subdivide(i, step.k);
      VertexMap out(lambda.vertex_count());
      std::copy(h.begin(), h.end(), out.begin());
      Vertex next = static_cast<Vertex>(i.vertex_count());
      for (const Arc& e : i.arcs()) {
        if (e.tail > e.head) continue;
        const auto walk = find_walk(g, h[e.tail], h[e.head], step.k);
        for (std::size_t t = 1; t < step.k; ++t) out[next++] = walk[t];
      }
      return out;
    }
    case Kind::walk_power: {
      const std::size_t l = (step.k - 1) / 2;
      VertexMap out(i.vertex_count());
      for (Vertex v = 0; v < i.vertex_count(); ++v) out[v] = omega_vertex(h[v], g.vertex_count(), l).a0;
      return out;
    }
    case Kind::arc_digraph: {
      const auto pairs = arc_right_adjoint_vertices(g);
      VertexMap out(i.arc_count());
      for (std::size_t e = 0; e < i.arc_count(); ++e) {
        const Arc a = i.arcs()[e];
        const VertexMask meet = pairs[h[a.tail]].second & pairs[h[a.head]].first;
        out[e] = static_cast<Vertex>(std::countr_zero(meet));
      }
      return out;
    }
    case Kind::gadget_replace: {
      const PPFormula& phi = *step.formula;
      const GadgetLayout layout = gadget_layout(i, phi);
      const Digraph lambda = gadget_replace(i, phi);
      const std::size_t arity = phi.arity();
      const std::size_t base = g.vertex_count();
      VertexMap out(lambda.vertex_count(), 0);
      std::vector<char> assigned(lambda.vertex_count(), 0);
      auto assign = [&](Vertex v, Vertex value) {
        if (assigned[v] && out[v] != value) {
          fail(ErrorCode::internal_consistency, "gadget copies disagree on a shared vertex");
        }
        assigned[v] = 1;
        out[v] = value;
      };
      for (Vertex v = 0; v < i.vertex_count(); ++v) {
        const auto tuple = tuple_at(h[v], base, arity);
        for (std::size_t t = 0; t < arity; ++t) assign(layout.slot[v * arity + t], tuple[t]);
      }
      for (std::size_t c = 0; c < layout.copies.size(); ++c) {
        const Arc e = layout.copy_arcs[c];
        const auto ut = tuple_at(h[e.tail], base, arity);
        const auto vt = tuple_at(h[e.head], base, arity);
        std::vector<Domain> domains(phi.gadget.vertex_count(), Domain(base));
        for (auto& d : domains) d.set();
        for (std::size_t t = 0; t < arity; ++t) {
          Domain pu(base), pv(base);
          pu.set(ut[t]);
          pv.set(vt[t]);
          domains[phi.xs[t]] &= pu;
          domains[phi.ys[t]] &= pv;
        }
        const auto local = find_hom(phi.gadget, g, std::move(domains));
        if (!local) fail(ErrorCode::internal_consistency, "pp-power arc without a gadget witness");
        for (Vertex j = 0; j < phi.gadget.vertex_count(); ++j) assign(layout.copies[c][j], (*local)[j]);
      }
      return out;
    }
    default: break;
  }
  fail(ErrorCode::invalid_parameter, step.label + " has no push-forward converter");
}

Digraph random_digraph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && coin(rng)) arcs.push_back({u, v});
  return Digraph(n, std::move(arcs));
}

Digraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  return sym(random_digraph(n, p, rng));
}

bool AdjointReport::pass() const {
  return counterexamples.empty() &&
         std::all_of(fact_failures.begin(), fact_failures.end(), [](std::size_t f) { return f == 0; });
}

namespace {

struct SampleOutcome {
  bool skipped = false;
  bool positive = false;
  std::string counterexample;
  std::array<bool, 4> fact_failed{};
};

SampleOutcome run_sample(const FunctorStep& left, const FunctorStep& right, std::size_t index,
                         std::size_t max_vertices, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> size(1, max_vertices);
  std::uniform_int_distribution<std::size_t> density(0, kSampleDensities.size() - 1);
  const bool undirected = left.needs_undirected() || right.needs_undirected();
  auto draw = [&]() {
    const std::size_t n = size(rng);
    const double p = kSampleDensities[density(rng)];
    return undirected ? random_graph(n, p, rng) : random_digraph(n, p, rng);
  };
  const Digraph h = draw();
  const Digraph g = draw();
  std::vector<Vertex> keep;
  std::bernoulli_distribution coin(0.5);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (coin(rng)) keep.push_back(v);
  if (keep.empty()) keep.push_back(0);
  const Digraph g_sub = induced_subgraph(g, keep);

  bool declared_pair = false;
  try {
    declared_pair = right_adjoint(left).label == right.label;
  } catch (const Error&) {
  }
  SampleOutcome outcome;
  try {
    const Digraph lh = apply_step(left, h);
    const Digraph rg = apply_step(right, g);
    const bool lhs = has_hom(lh, g);
    const bool rhs = has_hom(h, rg);
    outcome.positive = lhs && rhs;
    if (lhs != rhs) {
      outcome.counterexample = "sample " + std::to_string(index) + ": H=" + edge_list_string(h) +
                               " G=" + edge_list_string(g) + " left=" + (lhs ? "yes" : "no") +
                               " right=" + (rhs ? "yes" : "no");
    }
    outcome.fact_failed[0] = !has_hom(h, apply_step(right, lh));
    // For a declared adjoint pair the counit is the converter applied to the identity of
    // Gamma G; otherwise fall back to search.
    const Digraph lrg = apply_step(left, rg);
    if (declared_pair) {
      VertexMap identity(rg.vertex_count());
      std::iota(identity.begin(), identity.end(), Vertex{0});
      outcome.fact_failed[1] = !is_hom(lrg, g, push_forward_hom(left, rg, g, identity));
    } else {
      outcome.fact_failed[1] = !has_hom(lrg, g);
    }
    outcome.fact_failed[2] = !has_hom(apply_step(left, g_sub), apply_step(left, g)) ||
                             !has_hom(apply_step(right, g_sub), rg);
    outcome.fact_failed[3] =
        !hom_equivalent(apply_step(left, disjoint_union(h, g)), disjoint_union(lh, apply_step(left, g)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::size_limit) throw;
    outcome = SampleOutcome{};
    outcome.skipped = true;
  }
  return outcome;
}

AdjointReport assemble(const FunctorStep& left, const FunctorStep& right,
                       const std::vector<SampleOutcome>& outcomes) {
  AdjointReport report;
  report.left = left.label;
  report.right = right.label;
  report.samples = outcomes.size();
  for (const auto& o : outcomes) {
    if (o.skipped) {
      ++report.skipped;
      continue;
    }
    ++report.checked;
    report.positive += o.positive;
    if (!o.counterexample.empty()) report.counterexamples.push_back(o.counterexample);
    for (std::size_t f = 0; f < 4; ++f) report.fact_failures[f] += o.fact_failed[f];
  }
  return report;
}

}  // namespace

AdjointReport check_adjoint(const FunctorStep& left, const FunctorStep& right,
                            std::size_t samples, std::size_t max_vertices, std::uint64_t seed) {
  if (max_vertices == 0) fail(ErrorCode::invalid_parameter, "max_vertices must be positive");
  std::vector<SampleOutcome> outcomes(samples);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s) {
    try {
      outcomes[s] = run_sample(left, right, static_cast<std::size_t>(s), max_vertices, seed);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return assemble(left, right, outcomes);
}

AdjointReport check_adjoint_serial(const FunctorStep& left, const FunctorStep& right,
                                   std::size_t samples, std::size_t max_vertices,
                                   std::uint64_t seed) {
  if (max_vertices == 0) fail(ErrorCode::invalid_parameter, "max_vertices must be positive");
  std::vector<SampleOutcome> outcomes;
  for (std::size_t s = 0; s < samples; ++s)
    outcomes.push_back(run_sample(left, right, s, max_vertices, seed));
  return assemble(left, right, outcomes);
}

OmegaSearch min_odd_k_omega_hom(const Digraph& h, const Digraph& g, std::size_t cap_k,
                                std::uint64_t vertex_cap) {
  OmegaSearch result;
  for (std::size_t k = 1; k <= cap_k; k += 2) {
    Digraph om;
    try {
      om = omega(h, k, vertex_cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::size_limit) throw;
      result.hit_cap = true;
      return result;
    }
    result.tried_up_to = k;
    if (has_hom(om, g)) {
      result.k = k;
      return result;
    }
  }
  return result;
}

}  // namespace homlab
