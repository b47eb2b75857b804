#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/hom.hpp"

namespace homlab {

/// A minor map pi: position i of the higher-arity function goes to variable
/// pi[i] of the lower-arity one. Positions and variables are 0-based.
using MinorMap = std::vector<std::size_t>;

/// Homomorphism H^n -> G, evaluated on n-tuples of source vertices.
/// Backed either by a table in lexicographic tuple order or by a rule.
/// Source and target graphs are held by reference and must outlive the value.
class Polymorphism {
 public:
  using Rule = std::function<Vertex(std::span<const Vertex>)>;

  /// Checks edge preservation on every arc of H^n (corrupt-polymorphism otherwise).
  static Polymorphism from_table(const Digraph& source, const Digraph& target, std::size_t arity,
                                 std::vector<Vertex> table);
  /// Spot-checks edge preservation on `samples` random arcs of H^n.
  static Polymorphism from_rule(const Digraph& source, const Digraph& target, std::size_t arity,
                                Rule rule, std::uint64_t seed = 0, std::size_t samples = 10'000);
  /// x |-> x_i as an endomorphism-type polymorphism of `graph`.
  static Polymorphism projection(const Digraph& graph, std::size_t arity, std::size_t i);

  Vertex operator()(std::span<const Vertex> x) const;
  Vertex at_index(std::uint64_t index) const;

  std::size_t arity() const { return arity_; }
  const Digraph& source() const { return *source_; }
  const Digraph& target() const { return *target_; }
  bool has_table() const { return table_ != nullptr; }
  /// Throws unsupported-representation for rule-backed values.
  const std::vector<Vertex>& table() const;
  /// Table-backed copy; size-limit when |V(H)|^n exceeds cap.
  Polymorphism materialized(std::uint64_t cap = caps::kTableSize) const;

 private:
  friend class PolymorphismEnumerator;
  Polymorphism(const Digraph& source, const Digraph& target, std::size_t arity);
  static Polymorphism trusted_table(const Digraph& source, const Digraph& target,
                                    std::size_t arity, std::vector<Vertex> table);

  const Digraph* source_;
  const Digraph* target_;
  std::size_t arity_;
  std::shared_ptr<const std::vector<Vertex>> table_;
  Rule rule_;
};

bool operator==(const Polymorphism& a, const Polymorphism& b);

/// Lazily yields Pol(H,G) of a fixed arity in lexicographic order of tables.
class PolymorphismEnumerator {
 public:
  PolymorphismEnumerator(const Digraph& source, const Digraph& target, std::size_t arity,
                         std::uint64_t cap = caps::kTensorVertices);
  std::optional<Polymorphism> next();
  const Digraph& power() const { return *power_; }

 private:
  const Digraph* source_;
  const Digraph* target_;
  std::size_t arity_;
  std::unique_ptr<Digraph> power_;
  std::unique_ptr<HomEnumerator> search_;
};

/// Materialized enumeration; size-limit once more than `count_cap` are found.
std::vector<Polymorphism> enumerate_polymorphisms(const Digraph& source, const Digraph& target,
                                                  std::size_t arity,
                                                  std::uint64_t count_cap = caps::kHomResults);

/// One polymorphism from a seeded randomized search, absent iff Pol is empty at this arity.
std::optional<Polymorphism> sample_polymorphism(const Digraph& source, const Digraph& target,
                                                std::size_t arity, std::uint64_t seed);

/// f^pi of arity `arity`: g(x_0..x_{arity-1}) = f(x_{pi[0]}, .., x_{pi[m-1]}).
/// Table-backed input gives a table-backed result when it fits in caps::kTableSize.
Polymorphism minor(const Polymorphism& f, const MinorMap& pi, std::size_t arity);

/// Composite pi then rho as a single minor map: i |-> rho[pi[i]].
MinorMap compose(const MinorMap& pi, const MinorMap& rho);

/// Coordinates f depends on. Requires a table.
std::vector<std::size_t> essential_coords(const Polymorphism& f);

/// Integer linear function sum c_i x_i.
struct LinearFn {
  std::vector<long long> c;
  friend bool operator==(const LinearFn&, const LinearFn&) = default;
};

/// Odd coefficient sum and l1 norm at most N.
bool z_leq_n_member(const LinearFn& f, long long n);
/// Coefficient of variable j is the sum of c_i over pi[i] = j.
LinearFn linear_minor(const LinearFn& f, const MinorMap& pi, std::size_t arity);

/// With arcs (a_i, b_i) of `pattern` in sorted order, checks
/// f(x_{a_1},..,x_{a_m}) = f(x_{b_1},..,x_{b_m}) as functions of |V(pattern)| variables.
bool h_loop_check(const Digraph& pattern, const Polymorphism& f,
                  std::uint64_t cap = caps::kTableSize);

/// The function C_k^n -> K_3 equal to 2 on the all-ones tuple and h(x_1) elsewhere,
/// where h is the least coloring of C_k with h(0) = h(2) = 0 and h(1) = 1.
/// Every coordinate is essential. `cycle` must be C_k with k >= 5 odd, `k3` must be K_3.
Polymorphism all_ones_spike(const Digraph& cycle, const Digraph& k3, std::size_t arity);

/// Every map [m] -> [n] in lexicographic order.
std::vector<MinorMap> all_minor_maps(std::size_t m, std::size_t n);

}  // namespace homlab
