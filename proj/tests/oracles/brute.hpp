#pragma once

#include <cstdint>
#include <vector>

#include "homlab/graph.hpp"

namespace oracle {

/// Every map V(H) -> V(G) in lexicographic order, filtered by the arc condition.
std::vector<homlab::VertexMap> brute_homs(const homlab::Digraph& h, const homlab::Digraph& g);
bool brute_has_hom(const homlab::Digraph& h, const homlab::Digraph& g);
/// Least n with a proper n-coloring, by trying every coloring.
std::size_t brute_chromatic(const homlab::Digraph& g);
/// Boolean adjacency matrix of G raised to the k-th power.
std::vector<std::vector<bool>> walk_matrix(const homlab::Digraph& g, std::size_t k);

}  // namespace oracle

namespace oracle {

/// All tables V(H)^n -> V(G), lexicographic, that preserve every componentwise arc.
/// Arc tuples are enumerated directly, without building the tensor power.
std::vector<std::vector<homlab::Vertex>> brute_polymorphisms(const homlab::Digraph& h,
                                                             const homlab::Digraph& g,
                                                             std::size_t n);

}  // namespace oracle

namespace oracle {

/// Maximal arc sets U x V inside E(g), found by scanning all vertex-subset pairs;
/// returned as sorted arc-index lists in sorted order.
std::vector<std::vector<std::size_t>> brute_maximal_faces(const homlab::Digraph& g);

}  // namespace oracle
