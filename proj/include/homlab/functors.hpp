#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

/// Vertex subset of a graph with at most 64 vertices, bit v for vertex v.
using VertexMask = std::uint64_t;

/// Lambda_k: every undirected edge becomes a path with k edges (k odd). The
/// original vertices keep their numbers; path vertices follow, edge by edge in
/// sorted order, listed from the smaller endpoint. A loop becomes a closed walk
/// of length k through its vertex.
Digraph subdivide(const Digraph& g, std::size_t k);

/// Gamma_k: u -> v whenever a walk of length exactly k leads from u to v.
Digraph walk_power(const Digraph& g, std::size_t k);

/// Vertices of Omega_k G for k = 2l + 1: a singleton A_0 and subsets A_1..A_l.
struct OmegaVertex {
  Vertex a0 = 0;
  std::vector<VertexMask> sets;  // A_1..A_l
  friend bool operator==(const OmegaVertex&, const OmegaVertex&) = default;
};

/// Index of an Omega vertex: a0 is most significant, then A_1, .., A_l as n-bit numbers.
std::uint64_t omega_index(const OmegaVertex& v, std::size_t n);
OmegaVertex omega_vertex(std::uint64_t index, std::size_t n, std::size_t l);
std::uint64_t omega_vertex_count(std::size_t n, std::size_t k, std::uint64_t cap);

/// Omega_k for an undirected G; size-limit past `cap` vertices.
Digraph omega(const Digraph& g, std::size_t k, std::uint64_t cap = caps::kOmegaVertices);

/// delta: vertices are the arcs of D in sorted order, arcs join (u,v) to (v,w).
Digraph arc_digraph(const Digraph& d);

/// Vertices of delta_R D as (S, T) masks, in order of S then T.
std::vector<std::pair<VertexMask, VertexMask>> arc_right_adjoint_vertices(
    const Digraph& d, std::uint64_t cap = caps::kPairScan);
/// delta_R: pairs (S,T) with S x T inside E(D), empty sets allowed; (S,T) -> (S',T')
/// iff T meets S'. The 4^|V| pair scan must stay within `cap`.
Digraph arc_right_adjoint(const Digraph& d, std::uint64_t cap = caps::kPairScan);
/// The pairs with T = common out-neighbours of S and S = common in-neighbours of T.
std::vector<std::pair<VertexMask, VertexMask>> closed_pairs(const Digraph& d);
/// delta_R restricted to closed pairs; homomorphically equivalent to delta_R D.
Digraph arc_right_adjoint_closed(const Digraph& d);

Digraph sym(const Digraph& d);
Digraph sub(const Digraph& d);

/// Primitive positive formula given by a gadget digraph and two tuples of
/// distinguished vertices. Repeated entries encode equalities.
struct PPFormula {
  Digraph gadget;
  std::vector<Vertex> xs;
  std::vector<Vertex> ys;
  /// Some automorphism of the gadget swaps xs and ys pointwise.
  bool symmetric = false;

  /// Validates indices and computes the symmetric flag.
  static PPFormula make(Digraph gadget, std::vector<Vertex> xs, std::vector<Vertex> ys);
  std::size_t arity() const { return xs.size(); }
};

/// Gadget file: the graph text format plus lines `x <v...>` and `y <v...>`.
PPFormula read_pp_formula(std::istream& in);
PPFormula read_pp_formula_file(const std::string& path);
void write_pp_formula(std::ostream& out, const PPFormula& phi);

/// The path x - z_1 - .. - z_{k-1} - y.
PPFormula path_formula(std::size_t k);
/// (x_1,x_2) in E, (y_1,y_2) in E, x_2 = y_1.
PPFormula arc_formula();

/// Lambda_phi: vertices v_1..v_n per vertex of I and a fresh gadget copy per
/// arc (per edge when I is undirected), glued along xs and ys. Vertices are
/// renumbered by their smallest slot: slots v_i come first as v*n + i, then
/// copy c vertex j as |V(I)|*n + c*|V(J)| + j.
Digraph gadget_replace(const Digraph& i, const PPFormula& phi);
/// Vertex of Lambda_phi I holding slot u_i, and of the gadget copy for an arc.
struct GadgetLayout {
  std::vector<Vertex> slot;                 // u*n + i -> vertex
  std::vector<std::vector<Vertex>> copies;  // copy c, gadget vertex j -> vertex
  std::vector<Arc> copy_arcs;               // arc of I that copy c replaces
};
GadgetLayout gadget_layout(const Digraph& i, const PPFormula& phi);

/// Gamma_phi: vertices are n-tuples (lexicographic index); u -> v iff phi(u, v)
/// holds in G.
/// `cap` bounds the number of tuples. The arc scan runs in parallel over tails.
Digraph pp_power(const Digraph& g, const PPFormula& phi, std::uint64_t cap = caps::kTensorVertices);
Digraph pp_power_serial(const Digraph& g, const PPFormula& phi,
                        std::uint64_t cap = caps::kTensorVertices);

/// One step of a functor pipeline.
struct FunctorStep {
  enum class Kind {
    subdivide,
    walk_power,
    omega,
    arc_digraph,
    arc_right_adjoint,
    sym,
    sub,
    gadget_replace,
    pp_power
  };
  Kind kind = Kind::sym;
  std::size_t k = 1;
  std::shared_ptr<const PPFormula> formula;
  /// Pipeline spelling, e.g. "gamma:3" or "gadget:@file".
  std::string label;

  bool needs_undirected() const;
};

FunctorStep make_step(FunctorStep::Kind kind, std::size_t k = 1,
                      std::shared_ptr<const PPFormula> formula = nullptr);
/// Parses one tag: delta, deltaR, sym, sub, lambda:k, gamma:k, omega:k,
/// gadget:@file, pppower:@file.
FunctorStep parse_step(std::string_view tag);
/// Applies a step, checking its domain; pipeline-error on violation.
Digraph apply_step(const FunctorStep& step, const Digraph& g);
/// Right adjoint of a left adjoint step (lambda->gamma, gamma->omega,
/// delta->deltaR, sym->sub, gadget->pppower); pipeline-error otherwise.
FunctorStep right_adjoint(const FunctorStep& step);

/// From h: Lambda I -> G to I -> Gamma G for the step Lambda.
/// Steps: subdivide, walk_power (into omega), arc_digraph, sym, gadget_replace.
VertexMap pull_back_hom(const FunctorStep& step, const Digraph& i, const Digraph& g,
                        const VertexMap& h);
/// From h: I -> Gamma G back to Lambda I -> G.
VertexMap push_forward_hom(const FunctorStep& step, const Digraph& i, const Digraph& g,
                           const VertexMap& h);

/// Erdos-Renyi digraph without loops.
Digraph random_digraph(std::size_t n, double p, std::mt19937_64& rng);
/// Symmetric closure of random_digraph.
Digraph random_graph(std::size_t n, double p, std::mt19937_64& rng);

inline constexpr std::array<double, 3> kSampleDensities{0.3, 0.5, 0.7};

struct AdjointReport {
  std::string left;
  std::string right;
  std::size_t samples = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  /// Samples where both sides of the iff held, for coverage.
  std::size_t positive = 0;
  std::vector<std::string> counterexamples;
  /// Failures of: G -> Gamma Lambda G; Lambda Gamma H -> H; monotonicity of
  /// both functors; Lambda preserving disjoint unions.
  std::array<std::size_t, 4> fact_failures{};

  bool pass() const;
};

/// Samples pairs (H, G) with 1..max_vertices vertices and checks
/// Lambda H -> G iff H -> Gamma G plus the four standard consequences.
/// Samples run in parallel; the report does not depend on the thread count.
AdjointReport check_adjoint(const FunctorStep& left, const FunctorStep& right,
                            std::size_t samples, std::size_t max_vertices, std::uint64_t seed);
AdjointReport check_adjoint_serial(const FunctorStep& left, const FunctorStep& right,
                                   std::size_t samples, std::size_t max_vertices,
                                   std::uint64_t seed);

struct OmegaSearch {
  std::optional<std::size_t> k;
  /// Largest odd k actually tried.
  std::size_t tried_up_to = 0;
  /// Set when some Omega_k exceeded the vertex cap before a hit.
  bool hit_cap = false;
};

/// Least odd k <= cap_k with Omega_k H -> G.
OmegaSearch min_odd_k_omega_hom(const Digraph& h, const Digraph& g, std::size_t cap_k,
                                std::uint64_t vertex_cap = caps::kOmegaVertices);

}  // namespace homlab
