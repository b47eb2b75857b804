#include "homlab/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "homlab/error.hpp"

namespace homlab {

void write_dgr(std::ostream& out, const Digraph& g) {
  out << "p dgr " << g.vertex_count() << ' ' << g.arc_count() << ' '
      << (g.undirected() ? 'u' : 'd') << '\n';
  for (const Arc& a : g.arcs()) out << "a " << a.tail << ' ' << a.head << '\n';
}

std::string to_dgr_string(const Digraph& g) {
  std::ostringstream out;
  write_dgr(out, g);
  return out.str();
}

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

Digraph read_dgr(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  bool undirected = false;
  std::vector<Arc> arcs;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::string tag;
    if (!(fields >> tag)) continue;
    if (tag == "p") {
      std::string kind, flag;
      if (have_header || !(fields >> kind >> n >> m >> flag) || kind != "dgr" ||
          (flag != "u" && flag != "d")) {
        fail(ErrorCode::parse_error, "bad header on line " + std::to_string(line_no));
      }
      undirected = flag == "u";
      have_header = true;
    } else if (tag == "a") {
      long long u = -1, v = -1;
      if (!have_header || !(fields >> u >> v) || u < 0 || v < 0) {
        fail(ErrorCode::parse_error, "bad arc on line " + std::to_string(line_no));
      }
      arcs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    } else {
      // Other tags (e.g. the x/y lines of gadget files) are left to the caller.
      continue;
    }
  }
  if (!have_header) fail(ErrorCode::parse_error, "missing 'p dgr' header");
  if (arcs.size() != m) {
    fail(ErrorCode::parse_error, "header announces " + std::to_string(m) + " arcs, found " +
                                     std::to_string(arcs.size()));
  }
  return Digraph(n, std::move(arcs), undirected);
}

Digraph read_dgr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse_error, "cannot open graph file '" + path + "'");
  return read_dgr(in);
}

void write_dgr_file(const std::string& path, const Digraph& g) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::invalid_parameter, "cannot write graph file '" + path + "'");
  write_dgr(out, g);
}

namespace {

std::size_t parse_count(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorCode::parse_error, "bad graph spec '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

std::string edge_list_string(const Digraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << (g.undirected() ? "u" : "d") << "[";
  bool first = true;
  for (const Arc& a : g.arcs()) {
    if (g.undirected() && a.tail > a.head) continue;
    out << (first ? "" : " ") << a.tail << (g.undirected() ? "-" : ">") << a.head;
    first = false;
  }
  out << "]";
  return out.str();
}

Digraph parse_graph_spec(std::string_view spec) {
  if (spec.empty()) fail(ErrorCode::parse_error, "empty graph spec");
  if (spec.front() == '@') return read_dgr_file(std::string(spec.substr(1)));
  const std::string_view body = spec.substr(1);
  if (spec.front() == 'C') return make_cycle(parse_count(body, spec));
  if (spec.front() == 'K') {
    auto colon = body.find(':');
    if (colon == std::string_view::npos) return make_clique(parse_count(body, spec));
    return make_circular_clique(parse_count(body.substr(0, colon), spec),
                                parse_count(body.substr(colon + 1), spec));
  }
  fail(ErrorCode::parse_error, "unknown graph spec '" + std::string(spec) + "'");
}

}  // namespace homlab
