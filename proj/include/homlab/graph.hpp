#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace homlab {

using Vertex = std::uint32_t;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  Arc reversed() const { return {head, tail}; }
  bool is_loop() const { return tail == head; }
  auto operator<=>(const Arc&) const = default;
};

/// Homomorphisms and other vertex maps are plain tables indexed by source vertex.
using VertexMap = std::vector<Vertex>;

namespace caps {
inline constexpr std::uint64_t kTensorVertices = 1'000'000;
inline constexpr std::uint64_t kHomResults = 50'000'000;
inline constexpr std::uint64_t kOmegaVertices = 100'000;
inline constexpr std::uint64_t kPairScan = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaximalFaces = 100'000;
inline constexpr std::uint64_t kTableSize = 1'000'000;
}  // namespace caps

/// Finite digraph on vertices 0..n-1. Loops are allowed. The arc list is kept
/// sorted and duplicate-free; an undirected graph is a digraph whose arc set is
/// closed under reversal and that carries the undirected flag.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::size_t vertex_count, std::vector<Arc> arcs, bool undirected = false);

  /// Builds an undirected graph from edges given in either orientation.
  static Digraph from_edges(std::size_t vertex_count, std::span<const Arc> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  bool undirected() const { return undirected_; }

  std::span<const Vertex> out_neighbors(Vertex v) const {
    return {out_.data() + out_offset_[v], out_.data() + out_offset_[v + 1]};
  }
  std::span<const Vertex> in_neighbors(Vertex v) const {
    return {in_.data() + in_offset_[v], in_.data() + in_offset_[v + 1]};
  }

  bool has_arc(Vertex u, Vertex v) const;
  bool has_arc(Arc a) const { return has_arc(a.tail, a.head); }
  /// Position of the arc in arcs(), if present.
  std::optional<std::size_t> arc_index(Arc a) const;
  bool has_loop() const;
  /// True when the arc set is closed under reversal, whatever the flag says.
  bool is_symmetric() const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.undirected_ == b.undirected_ && a.arcs_ == b.arcs_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  bool undirected_ = false;
  std::vector<std::size_t> out_offset_{0};
  std::vector<Vertex> out_;
  std::vector<std::size_t> in_offset_{0};
  std::vector<Vertex> in_;
};

Digraph make_clique(std::size_t n);
Digraph make_cycle(std::size_t k);
Digraph make_circular_clique(std::size_t p, std::size_t q);
Digraph make_directed_cycle(std::size_t k);
Digraph make_petersen();

/// Index of a tuple in lexicographic order (first coordinate most significant).
std::uint64_t tuple_index(std::span<const Vertex> tuple, std::uint64_t base);
std::vector<Vertex> tuple_at(std::uint64_t index, std::uint64_t base, std::size_t length);
/// base^exponent, or nullopt once the value exceeds limit.
std::optional<std::uint64_t> checked_power(std::uint64_t base, std::uint64_t exponent,
                                           std::uint64_t limit);

Digraph tensor_power(const Digraph& g, std::size_t n, std::uint64_t cap = caps::kTensorVertices);
Digraph disjoint_union(const Digraph& g, const Digraph& h);
Digraph induced_subgraph(const Digraph& g, std::span<const Vertex> vertices);

struct StructuralReport {
  bool is_bipartite = false;
  bool has_loop = false;
  bool is_square_free = false;
  bool is_connected = false;
};

StructuralReport structural_predicates(const Digraph& g);
bool is_bipartite(const Digraph& g);
bool is_square_free(const Digraph& g);
bool is_connected(const Digraph& g);
/// Number of weakly connected components.
std::size_t component_count(const Digraph& g);

using BigInt = boost::multiprecision::cpp_int;

/// binomial(n, floor(n/2)).
BigInt central_binomial_b(unsigned n);
/// Same value for n small enough to fit in 64 bits (n <= 66).
std::uint64_t central_binomial_u64(unsigned n);

}  // namespace homlab
