#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homlab/functors.hpp"
#include "homlab/graph.hpp"

namespace homlab {

/// Steps applied left to right.
struct FunctorPipeline {
  std::vector<FunctorStep> steps;

  std::string label() const;
};

/// Comma-separated step tags; the empty string is the empty pipeline.
FunctorPipeline parse_pipeline(std::string_view text);
/// Right adjoints of the steps in reverse order.
FunctorPipeline right_adjoint_pipeline(const FunctorPipeline& p);
/// Folds the steps over `i`; pipeline-error names the failing stage.
Digraph reduce_instance(const Digraph& i, const FunctorPipeline& p);

/// A candidate reduction from PCSP(h1, g1) to PCSP(h2, g2).
struct ReductionSpec {
  FunctorPipeline pipeline;
  Digraph h1, g1, h2, g2;

  /// invalid-input unless h1 -> g1 and h2 -> g2.
  static ReductionSpec make(FunctorPipeline pipeline, Digraph h1, Digraph g1, Digraph h2,
                            Digraph g2);
};

/// Text spec: lines `pipeline <tags>`, optional `gamma <tags>`, and `h1`, `g1`,
/// `h2`, `g2` each followed by a graph in the mini-language.
struct ReductionFile {
  ReductionSpec spec;
  std::optional<FunctorPipeline> gamma;
};
ReductionFile read_reduction_file(const std::string& path);

struct ReductionReport {
  std::string pipeline;
  std::string gamma;
  /// h1 -> Gamma h2 and Gamma g2 -> g1; unset when the image exceeded a cap.
  std::optional<bool> h1_to_gamma_h2;
  std::optional<bool> gamma_g2_to_g1;
  std::size_t instances = 0;
  std::size_t yes_instances = 0;
  std::size_t no_side_instances = 0;
  std::size_t skipped = 0;
  /// I -> h1 but not Lambda I -> h2.
  std::vector<std::string> completeness_failures;
  /// Lambda I -> g2 but not I -> g1.
  std::vector<std::string> soundness_failures;

  /// "pass", "fail" or "partial".
  std::string status() const;
};

/// Both template conditions plus an instance sweep: every connected graph with
/// at most `max_vertices` vertices and `random_samples` seeded random inputs
/// (graphs when the first step needs them, digraphs otherwise).
ReductionReport verify_reduction_conditions(const ReductionSpec& r, const FunctorPipeline& gamma,
                                            std::size_t max_vertices = 5,
                                            std::size_t random_samples = 100,
                                            std::uint64_t seed = 0);

/// Connected undirected graphs up to isomorphism, by vertex count then edge set.
/// At most 6 vertices.
std::vector<Digraph> connected_graphs(std::size_t max_vertices);

/// sub delta_R K_n with the same vertex numbering as delta_R K_n.
Digraph sub_delta_r_clique(std::size_t n);

struct PoljakRodlCertificates {
  std::size_t b = 0;
  Digraph graph;                   // sub delta_R K_n
  VertexMap clique_embedding;      // K_b -> graph
  VertexMap coloring;              // graph -> K_b
};
/// Antichain of floor(n/2)-subsets for the clique, and a symmetric chain
/// decomposition of the subset lattice for the colouring. n <= cap.
PoljakRodlCertificates poljak_rodl_certificates(std::size_t n, std::size_t cap = 5);

/// Chain of S in the bracket-matching symmetric chain decomposition, given by
/// its least element.
VertexMask symmetric_chain_root(VertexMask s, std::size_t n);

/// Vertex b of delta delta K4 as the triple (i, j, k).
std::array<Vertex, 3> delta_delta_triple(const Digraph& k4, Vertex b);
/// (i,j,k) -> j when j < 3, else the least colour outside {i, k}.
VertexMap delta_delta_k4_coloring();

struct DeltaIterations {
  std::optional<std::size_t> i;
  std::size_t tried_up_to = 0;
  bool hit_cap = false;
};
/// Least i <= cap with delta^i D -> K3.
DeltaIterations min_delta_iterations_to_3col(const Digraph& d, std::size_t cap,
                                             std::uint64_t vertex_cap = 200'000);

struct CliqueSandwich {
  std::size_t n = 0;
  std::size_t b = 0;
  VertexMap lower;  // K_b -> delta_R K_n
  VertexMap upper;  // delta_R K_n -> K_{2^n}
  bool lower_ok = false;
  bool upper_ok = false;
};
CliqueSandwich clique_sandwich(std::size_t n, std::size_t cap = 4);

struct ChiDeltaCheck {
  std::size_t chi_g = 0;
  std::size_t chi_delta = 0;
  /// min{n : chi(G) <= b(n)}
  std::size_t formula = 0;
  bool holds() const { return chi_delta == formula; }
};
ChiDeltaCheck chi_delta_formula_check(const Digraph& g, std::size_t n_max = 8);

}  // namespace homlab
