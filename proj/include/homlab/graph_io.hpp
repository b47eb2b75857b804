#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "homlab/graph.hpp"

namespace homlab {

// Text format:
//   p dgr <n> <m> <u|d>
//   a <u> <v>        (m lines)
// '#' starts a comment anywhere on a line.
void write_dgr(std::ostream& out, const Digraph& g);
std::string to_dgr_string(const Digraph& g);
Digraph read_dgr(std::istream& in);
Digraph read_dgr_file(const std::string& path);
void write_dgr_file(const std::string& path, const Digraph& g);

/// One-line description for reports, e.g. "3u[0-1 1-2]" or "2d[0>1]".
std::string edge_list_string(const Digraph& g);

/// Graph mini-language: K<n>, C<n>, K<p>:<q>, @<path>.
Digraph parse_graph_spec(std::string_view spec);

}  // namespace homlab
