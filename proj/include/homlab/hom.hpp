#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "homlab/graph.hpp"

namespace homlab {

/// Candidate target vertices for one source vertex.
using Domain = boost::dynamic_bitset<std::uint64_t>;

/// Resumable backtracking search for homomorphisms H -> G.
///
/// Source vertices are assigned in index order and values are tried in
/// ascending order, with arc consistency maintained after every assignment.
/// Solutions therefore come out in lexicographic order of their tables, and the
/// first one is the lexicographically least homomorphism. The graphs must
/// outlive the enumerator. Single consumer.
class HomEnumerator {
 public:
  HomEnumerator(const Digraph& source, const Digraph& target);
  /// `domains` restricts each source vertex; an empty vector means no restriction.
  HomEnumerator(const Digraph& source, const Digraph& target, std::vector<Domain> domains);

  std::optional<VertexMap> next();

  /// Try candidate values in a seeded random order instead of ascending order.
  /// Must be called before the first next(); lexicographic guarantees are lost.
  void shuffle_values(std::uint64_t seed);

  /// Some homomorphism, found independently of next(): connected components of
  /// the source are solved one at a time, each with a smallest-domain-first
  /// order. Deterministic, but not the lexicographically least solution.
  std::optional<VertexMap> solve_any() const;

  /// Domains after the initial propagation (empty when the search is already dead).
  const std::vector<Domain>& root_domains() const { return root_; }

 private:
  struct Frame {
    Vertex var;
    std::vector<Domain> saved;
    std::vector<Vertex> order;
    std::size_t position = 0;
  };

  Frame make_frame(Vertex var, std::vector<Domain> domains);

  bool propagate(std::vector<Domain>& domains, std::vector<Vertex> queue) const;
  bool solve_component(std::vector<Domain>& domains, const std::vector<Vertex>& vars) const;
  Domain image(const Domain& domain, const std::vector<Domain>& rows) const;

  const Digraph* source_;
  const Digraph* target_;
  std::vector<Domain> out_rows_;
  std::vector<Domain> in_rows_;
  std::vector<Domain> root_;
  std::vector<Frame> stack_;
  std::optional<std::mt19937_64> rng_;
  bool started_ = false;
  bool dead_ = false;
  bool infeasible_ = false;
};

bool is_hom(const Digraph& source, const Digraph& target, const VertexMap& map);

/// Some homomorphism (see HomEnumerator::solve_any).
std::optional<VertexMap> find_hom(const Digraph& source, const Digraph& target);
std::optional<VertexMap> find_hom(const Digraph& source, const Digraph& target,
                                  std::vector<Domain> domains);
/// The lexicographically least homomorphism; slower on hard instances.
std::optional<VertexMap> find_least_hom(const Digraph& source, const Digraph& target);
std::optional<VertexMap> find_least_hom(const Digraph& source, const Digraph& target,
                                        std::vector<Domain> domains);
inline bool has_hom(const Digraph& source, const Digraph& target) {
  return find_hom(source, target).has_value();
}

/// All homomorphisms in lexicographic order. Throws size-limit once more than
/// `cap` homomorphisms have been produced.
/// A homomorphism found by a seeded randomized search (not uniformly distributed).
std::optional<VertexMap> sample_hom(const Digraph& source, const Digraph& target, std::uint64_t seed);

std::vector<VertexMap> all_homs(const Digraph& source, const Digraph& target,
                                std::uint64_t cap = caps::kHomResults);

/// Set-valued map: one nonempty target subset per source vertex.
using Multihom = std::vector<std::vector<Vertex>>;
bool is_multihom(const Digraph& source, const Digraph& target, const Multihom& sets);

bool hom_equivalent(const Digraph& h, const Digraph& g);

std::size_t clique_number(const Digraph& g);
/// Least n with G -> K_n. Throws no-coloring when G has a loop.
std::size_t chromatic_number(const Digraph& g);

struct OddClosedWalk {
  std::size_t length = 0;
  /// walk[i] -> walk[i+1 mod length] are arcs; equivalently a homomorphism C_length -> H.
  std::vector<Vertex> walk;
};

/// Minimum-length odd closed walk, found through distances in the bipartite
/// double cover; ties go to the smallest start vertex. Absent iff bipartite.
std::optional<OddClosedWalk> shortest_odd_closed_walk(const Digraph& h);

}  // namespace homlab
