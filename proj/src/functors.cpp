#include "homlab/functors.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <fstream>
#include <numeric>
#include <sstream>

#include "homlab/error.hpp"
#include "homlab/graph_io.hpp"
#include "homlab/hom.hpp"

namespace homlab {

namespace {

void require_odd(std::size_t k) {
  if (k == 0 || k % 2 == 0) fail(ErrorCode::invalid_parameter, "k must be a positive odd number");
}

void require_mask_size(const Digraph& g) {
  if (g.vertex_count() > 64) fail(ErrorCode::size_limit, "subset encoding needs at most 64 vertices");
}

VertexMask bit(Vertex v) { return VertexMask{1} << v; }

/// Common out-neighbours (all vertices for the empty set).
VertexMask common_out(const std::vector<VertexMask>& out, VertexMask set, std::size_t n) {
  VertexMask all = n == 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
  for (VertexMask s = set; s; s &= s - 1) all &= out[std::countr_zero(s)];
  return all;
}

std::vector<VertexMask> out_masks(const Digraph& g) {
  std::vector<VertexMask> out(g.vertex_count(), 0);
  for (const Arc& a : g.arcs()) out[a.tail] |= bit(a.head);
  return out;
}

std::vector<VertexMask> in_masks(const Digraph& g) {
  std::vector<VertexMask> in(g.vertex_count(), 0);
  for (const Arc& a : g.arcs()) in[a.head] |= bit(a.tail);
  return in;
}

/// Every mask between lower and upper (lower must be inside upper), ascending.
template <class Visit>
void for_each_between(VertexMask lower, VertexMask upper, Visit visit) {
  if ((lower & ~upper) != 0) return;
  const VertexMask free = upper & ~lower;
  VertexMask sub = 0;
  while (true) {
    visit(lower | sub);
    if (sub == free) break;
    sub = (sub - free) & free;
  }
}

/// rows[u] = vertices reachable from u by walks of length exactly k.
std::vector<Domain> walk_rows(const Digraph& g, std::size_t k) {
  const std::size_t n = g.vertex_count();
  std::vector<Domain> step(n, Domain(n)), reach(n, Domain(n));
  for (const Arc& a : g.arcs()) step[a.tail].set(a.head);
  for (std::size_t v = 0; v < n; ++v) reach[v].set(v);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<Domain> next(n, Domain(n));
    for (std::size_t u = 0; u < n; ++u)
      for (auto w = reach[u].find_first(); w != Domain::npos; w = reach[u].find_next(w))
        next[u] |= step[w];
    reach = std::move(next);
  }
  return reach;
}

}  // namespace

Digraph subdivide(const Digraph& g, std::size_t k) {
  require_odd(k);
  if (!g.is_symmetric()) fail(ErrorCode::invalid_input, "subdivision needs an undirected graph");
  if (k == 1) return Digraph(g.vertex_count(), g.arcs(), true);
  std::vector<Arc> edges;
  Vertex next = static_cast<Vertex>(g.vertex_count());
  for (const Arc& e : g.arcs()) {
    if (e.tail > e.head) continue;
    Vertex previous = e.tail;
    for (std::size_t i = 1; i < k; ++i) {
      edges.push_back({previous, next});
      previous = next++;
    }
    edges.push_back({previous, e.head});
  }
  return Digraph::from_edges(next, edges);
}

Digraph walk_power(const Digraph& g, std::size_t k) {
  if (k == 0) fail(ErrorCode::invalid_parameter, "walk length must be positive");
  const auto rows = walk_rows(g, k);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < rows.size(); ++u)
    for (auto v = rows[u].find_first(); v != Domain::npos; v = rows[u].find_next(v))
      arcs.push_back({u, static_cast<Vertex>(v)});
  return Digraph(g.vertex_count(), std::move(arcs), g.undirected() || g.is_symmetric());
}

std::uint64_t omega_index(const OmegaVertex& v, std::size_t n) {
  std::uint64_t index = v.a0;
  for (VertexMask s : v.sets) index = (index << n) | s;
  return index;
}

OmegaVertex omega_vertex(std::uint64_t index, std::size_t n, std::size_t l) {
  OmegaVertex v;
  v.sets.resize(l);
  const VertexMask mask = n == 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
  for (std::size_t i = l; i-- > 0;) {
    v.sets[i] = index & mask;
    index >>= n;
  }
  v.a0 = static_cast<Vertex>(index);
  return v;
}

std::uint64_t omega_vertex_count(std::size_t n, std::size_t k, std::uint64_t cap) {
  require_odd(k);
  const std::size_t l = (k - 1) / 2;
  if (n * l >= 63) fail(ErrorCode::size_limit, "Omega vertex count overflows");
  const std::uint64_t count = static_cast<std::uint64_t>(n) << (n * l);
  if (n != 0 && (count >> (n * l)) != n) fail(ErrorCode::size_limit, "Omega vertex count overflows");
  if (count > cap) {
    fail(ErrorCode::size_limit, "Omega_" + std::to_string(k) + " would have " +
                                    std::to_string(count) + " vertices, cap " + std::to_string(cap));
  }
  return count;
}

Digraph omega(const Digraph& g, std::size_t k, std::uint64_t cap) {
  require_odd(k);
  if (!g.is_symmetric()) fail(ErrorCode::invalid_input, "Omega needs an undirected graph");
  require_mask_size(g);
  const std::size_t n = g.vertex_count();
  const std::size_t l = (k - 1) / 2;
  const std::uint64_t count = omega_vertex_count(n, k, cap);
  const auto out = out_masks(g);
  std::vector<Arc> arcs;
  for (std::uint64_t index = 0; index < count; ++index) {
    const OmegaVertex a = omega_vertex(index, n, l);
    // A_0 .. A_l as masks.
    std::vector<VertexMask> as{bit(a.a0)};
    as.insert(as.end(), a.sets.begin(), a.sets.end());
    // Bounds lower[j] <= B_j <= upper[j].
    std::vector<VertexMask> lower(l + 1, 0), upper(l + 1, 0);
    for (std::size_t j = 0; j <= l; ++j) {
      lower[j] = j == 0 ? 0 : as[j - 1];
      upper[j] = j < l ? as[j + 1] : common_out(out, as[l], n);
    }
    if (l == 0) upper[0] = common_out(out, as[0], n);
    for (VertexMask b0 = upper[0]; b0; b0 &= b0 - 1) {
      OmegaVertex b;
      b.a0 = static_cast<Vertex>(std::countr_zero(b0));
      b.sets.resize(l);
      // Odometer over the independent ranges of B_1..B_l.
      auto recurse = [&](auto&& self, std::size_t j) -> void {
        if (j > l) {
          arcs.push_back({static_cast<Vertex>(index), static_cast<Vertex>(omega_index(b, n))});
          return;
        }
        for_each_between(lower[j], upper[j], [&](VertexMask m) {
          b.sets[j - 1] = m;
          self(self, j + 1);
        });
      };
      recurse(recurse, 1);
    }
  }
  return Digraph(count, std::move(arcs), true);
}

Digraph arc_digraph(const Digraph& d) {
  const auto& arcs = d.arcs();
  std::vector<Arc> out;
  for (Vertex i = 0; i < arcs.size(); ++i)
    for (Vertex w : d.out_neighbors(arcs[i].head))
      out.push_back({i, static_cast<Vertex>(*d.arc_index({arcs[i].head, w}))});
  return Digraph(arcs.size(), std::move(out));
}

std::vector<std::pair<VertexMask, VertexMask>> arc_right_adjoint_vertices(const Digraph& d,
                                                                          std::uint64_t cap) {
  const std::size_t n = d.vertex_count();
  if (2 * n >= 64 || (std::uint64_t{1} << (2 * n)) > cap) {
    fail(ErrorCode::size_limit, "delta_R pair scan over " + std::to_string(n) +
                                    " vertices exceeds cap " + std::to_string(cap));
  }
  const auto out = out_masks(d);
  std::vector<std::pair<VertexMask, VertexMask>> vertices;
  for (VertexMask s = 0; s < (VertexMask{1} << n); ++s)
    for_each_between(0, common_out(out, s, n), [&](VertexMask t) { vertices.emplace_back(s, t); });
  return vertices;
}

namespace {

Digraph pair_digraph(const std::vector<std::pair<VertexMask, VertexMask>>& vertices) {
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < vertices.size(); ++i) {
    const VertexMask t = vertices[i].second;
    if (t == 0) continue;
    for (Vertex j = 0; j < vertices.size(); ++j)
      if (t & vertices[j].first) arcs.push_back({i, j});
  }
  return Digraph(vertices.size(), std::move(arcs));
}

}  // namespace

Digraph arc_right_adjoint(const Digraph& d, std::uint64_t cap) {
  return pair_digraph(arc_right_adjoint_vertices(d, cap));
}

std::vector<std::pair<VertexMask, VertexMask>> closed_pairs(const Digraph& d) {
  require_mask_size(d);
  const std::size_t n = d.vertex_count();
  if (n >= 32) fail(ErrorCode::size_limit, "closed pair scan needs fewer than 32 vertices");
  const auto out = out_masks(d);
  const auto in = in_masks(d);
  std::vector<std::pair<VertexMask, VertexMask>> pairs;
  for (VertexMask s = 0; s < (VertexMask{1} << n); ++s) {
    const VertexMask t = common_out(out, s, n);
    if (common_out(in, t, n) == s) pairs.emplace_back(s, t);
  }
  return pairs;
}

Digraph arc_right_adjoint_closed(const Digraph& d) { return pair_digraph(closed_pairs(d)); }

Digraph sym(const Digraph& d) {
  std::vector<Arc> arcs = d.arcs();
  for (const Arc& a : d.arcs()) arcs.push_back(a.reversed());
  return Digraph(d.vertex_count(), std::move(arcs), true);
}

Digraph sub(const Digraph& d) {
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs())
    if (d.has_arc(a.reversed())) arcs.push_back(a);
  return Digraph(d.vertex_count(), std::move(arcs), true);
}

PPFormula PPFormula::make(Digraph gadget, std::vector<Vertex> xs, std::vector<Vertex> ys) {
  if (xs.empty() || xs.size() != ys.size()) {
    fail(ErrorCode::invalid_parameter, "pp-formula needs equally long nonempty x and y tuples");
  }
  const std::size_t m = gadget.vertex_count();
  for (Vertex v : xs)
    if (v >= m) fail(ErrorCode::invalid_parameter, "x vertex outside the gadget");
  for (Vertex v : ys)
    if (v >= m) fail(ErrorCode::invalid_parameter, "y vertex outside the gadget");
  PPFormula phi{std::move(gadget), std::move(xs), std::move(ys), false};
  std::vector<Domain> domains(m, Domain(m));
  for (auto& d : domains) d.set();
  for (std::size_t i = 0; i < phi.xs.size(); ++i) {
    Domain to_y(m), to_x(m);
    to_y.set(phi.ys[i]);
    to_x.set(phi.xs[i]);
    domains[phi.xs[i]] &= to_y;
    domains[phi.ys[i]] &= to_x;
  }
  HomEnumerator search(phi.gadget, phi.gadget, domains);
  while (auto h = search.next()) {
    std::vector<Vertex> image = *h;
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) == image.end()) {
      phi.symmetric = true;
      break;
    }
  }
  return phi;
}

PPFormula read_pp_formula(std::istream& in) {
  std::ostringstream graph_text;
  std::vector<Vertex> xs, ys;
  bool saw_x = false, saw_y = false;
  std::string line;
  while (std::getline(in, line)) {
    const std::string content = line.substr(0, line.find('#'));
    std::istringstream words(content);
    std::string tag;
    words >> tag;
    if (tag == "x" || tag == "y") {
      auto& target = tag == "x" ? xs : ys;
      (tag == "x" ? saw_x : saw_y) = true;
      long long v;
      while (words >> v) {
        if (v < 0) fail(ErrorCode::parse_error, "negative gadget vertex");
        target.push_back(static_cast<Vertex>(v));
      }
      if (!words.eof()) fail(ErrorCode::parse_error, "bad vertex list: " + line);
    } else {
      graph_text << line << '\n';
    }
  }
  if (!saw_x || !saw_y) fail(ErrorCode::parse_error, "pp-formula needs x and y lines");
  std::istringstream graph_in(graph_text.str());
  return PPFormula::make(read_dgr(graph_in), std::move(xs), std::move(ys));
}

PPFormula read_pp_formula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse_error, "cannot open " + path);
  return read_pp_formula(in);
}

void write_pp_formula(std::ostream& out, const PPFormula& phi) {
  write_dgr(out, phi.gadget);
  out << 'x';
  for (Vertex v : phi.xs) out << ' ' << v;
  out << "\ny";
  for (Vertex v : phi.ys) out << ' ' << v;
  out << '\n';
}

PPFormula path_formula(std::size_t k) {
  if (k == 0) fail(ErrorCode::invalid_parameter, "path length must be positive");
  std::vector<Arc> edges;
  for (Vertex i = 0; i < k; ++i) edges.push_back({i, i + 1});
  return PPFormula::make(Digraph::from_edges(k + 1, edges), {0}, {static_cast<Vertex>(k)});
}

PPFormula arc_formula() { return PPFormula::make(Digraph(3, {{0, 1}, {1, 2}}), {0, 1}, {1, 2}); }

GadgetLayout gadget_layout(const Digraph& i, const PPFormula& phi) {
  if (i.undirected() && !phi.symmetric) {
    fail(ErrorCode::invalid_parameter, "undirected input needs a symmetric gadget");
  }
  const std::size_t n = phi.arity();
  const std::size_t m = phi.gadget.vertex_count();
  GadgetLayout layout;
  for (const Arc& a : i.arcs())
    if (!i.undirected() || a.tail <= a.head) layout.copy_arcs.push_back(a);
  const std::size_t slots = i.vertex_count() * n + layout.copy_arcs.size() * m;
  std::vector<std::size_t> parent(slots);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  const std::size_t base = i.vertex_count() * n;
  for (std::size_t c = 0; c < layout.copy_arcs.size(); ++c) {
    const Arc e = layout.copy_arcs[c];
    for (std::size_t t = 0; t < n; ++t) {
      unite(base + c * m + phi.xs[t], e.tail * n + t);
      unite(base + c * m + phi.ys[t], e.head * n + t);
    }
  }
  std::vector<Vertex> id(slots, 0);
  std::vector<char> named(slots, 0);
  Vertex next = 0;
  for (std::size_t s = 0; s < slots; ++s) {
    const std::size_t root = find(s);
    if (!named[root]) {
      named[root] = 1;
      id[root] = next++;
    }
    id[s] = id[root];
  }
  layout.slot.assign(id.begin(), id.begin() + static_cast<std::ptrdiff_t>(base));
  layout.copies.resize(layout.copy_arcs.size());
  for (std::size_t c = 0; c < layout.copy_arcs.size(); ++c)
    layout.copies[c].assign(id.begin() + static_cast<std::ptrdiff_t>(base + c * m),
                            id.begin() + static_cast<std::ptrdiff_t>(base + (c + 1) * m));
  return layout;
}

Digraph gadget_replace(const Digraph& i, const PPFormula& phi) {
  const GadgetLayout layout = gadget_layout(i, phi);
  Vertex count = 0;
  for (Vertex v : layout.slot) count = std::max(count, v + 1);
  for (const auto& copy : layout.copies)
    for (Vertex v : copy) count = std::max(count, v + 1);
  std::vector<Arc> arcs;
  for (const auto& copy : layout.copies)
    for (const Arc& a : phi.gadget.arcs()) arcs.push_back({copy[a.tail], copy[a.head]});
  return Digraph(count, std::move(arcs), i.undirected() && phi.gadget.is_symmetric());
}

namespace {

/// Arcs of Gamma_phi G leaving tuple `u`, ascending.
std::vector<Vertex> pp_row(const Digraph& g, const PPFormula& phi, std::uint64_t u) {
  const std::size_t n = phi.arity();
  const std::size_t m = phi.gadget.vertex_count();
  const std::size_t base = g.vertex_count();
  const auto ut = tuple_at(u, base, n);
  std::vector<Domain> domains(m, Domain(base));
  for (auto& d : domains) d.set();
  for (std::size_t t = 0; t < n; ++t) {
    Domain pin(base);
    pin.set(ut[t]);
    domains[phi.xs[t]] &= pin;
    if (domains[phi.xs[t]].none()) return {};
  }
  // Candidate y-tuples come from the propagated domains with x pinned.
  HomEnumerator probe(phi.gadget, g, domains);
  const auto& root = probe.root_domains();
  if (root.empty()) return {};
  std::vector<Vertex> row;
  std::vector<Vertex> vt(n, 0);
  std::vector<std::vector<Vertex>> options(n);
  for (std::size_t t = 0; t < n; ++t)
    for (auto a = root[phi.ys[t]].find_first(); a != Domain::npos; a = root[phi.ys[t]].find_next(a))
      options[t].push_back(static_cast<Vertex>(a));
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    auto pinned = domains;
    bool possible = true;
    for (std::size_t t = 0; t < n && possible; ++t) {
      vt[t] = options[t][pick[t]];
      Domain pin(base);
      pin.set(vt[t]);
      pinned[phi.ys[t]] &= pin;
      possible = pinned[phi.ys[t]].any();
    }
    if (possible && find_hom(phi.gadget, g, std::move(pinned))) {
      row.push_back(static_cast<Vertex>(tuple_index(vt, base)));
    }
    std::size_t t = n;
    while (t > 0 && ++pick[t - 1] == options[t - 1].size()) pick[--t] = 0;
    if (t == 0) break;
  }
  std::sort(row.begin(), row.end());
  return row;
}

std::uint64_t pp_vertex_count(const Digraph& g, const PPFormula& phi, std::uint64_t cap) {
  const auto count = checked_power(g.vertex_count(), phi.arity(), cap);
  if (!count) fail(ErrorCode::size_limit, "pp-power has more than " + std::to_string(cap) + " vertices");
  return *count;
}

Digraph assemble_pp(const Digraph& g, const PPFormula& phi, std::uint64_t count,
                    const std::vector<std::vector<Vertex>>& rows) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < count; ++u)
    for (Vertex v : rows[u]) arcs.push_back({u, v});
  const bool undirected = g.undirected() && phi.symmetric;
  return Digraph(count, std::move(arcs), undirected);
}

}  // namespace

Digraph pp_power(const Digraph& g, const PPFormula& phi, std::uint64_t cap) {
  const std::uint64_t count = pp_vertex_count(g, phi, cap);
  std::vector<std::vector<Vertex>> rows(count);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t u = 0; u < static_cast<std::int64_t>(count); ++u) {
    try {
      rows[u] = pp_row(g, phi, static_cast<std::uint64_t>(u));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return assemble_pp(g, phi, count, rows);
}

Digraph pp_power_serial(const Digraph& g, const PPFormula& phi, std::uint64_t cap) {
  const std::uint64_t count = pp_vertex_count(g, phi, cap);
  std::vector<std::vector<Vertex>> rows(count);
  for (std::uint64_t u = 0; u < count; ++u) rows[u] = pp_row(g, phi, u);
  return assemble_pp(g, phi, count, rows);
}

}  // namespace homlab
