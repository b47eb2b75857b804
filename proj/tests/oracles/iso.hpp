#pragma once

#include "homlab/graph.hpp"

namespace oracle {

/// Delegates to boost::isomorphism on a bidirectional copy of each graph.
bool isomorphic(const homlab::Digraph& a, const homlab::Digraph& b);

/// Connected, 2-regular, n vertices and no loops.
bool is_undirected_cycle(const homlab::Digraph& g, std::size_t n);

}  // namespace oracle
