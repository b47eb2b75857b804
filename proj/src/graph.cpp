#include "homlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "homlab/error.hpp"

namespace homlab {

Digraph::Digraph(std::size_t vertex_count, std::vector<Arc> arcs, bool undirected)
    : n_(vertex_count), arcs_(std::move(arcs)), undirected_(undirected) {
  for (const Arc& a : arcs_) {
    if (a.tail >= n_ || a.head >= n_) {
      fail(ErrorCode::invalid_input, "arc (" + std::to_string(a.tail) + "," +
                                         std::to_string(a.head) + ") outside vertex range " +
                                         std::to_string(n_));
    }
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

  out_offset_.assign(n_ + 1, 0);
  in_offset_.assign(n_ + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_offset_[a.tail + 1];
    ++in_offset_[a.head + 1];
  }
  std::partial_sum(out_offset_.begin(), out_offset_.end(), out_offset_.begin());
  std::partial_sum(in_offset_.begin(), in_offset_.end(), in_offset_.begin());
  out_.resize(arcs_.size());
  in_.resize(arcs_.size());
  std::vector<std::size_t> in_fill(in_offset_.begin(), in_offset_.end() - 1);
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    out_[i] = arcs_[i].head;  // arcs_ sorted by tail, so this is already CSR order
    in_[in_fill[arcs_[i].head]++] = arcs_[i].tail;
  }

  if (undirected_ && !is_symmetric()) {
    fail(ErrorCode::invalid_input, "undirected flag set but arc set is not closed under reversal");
  }
}

Digraph Digraph::from_edges(std::size_t vertex_count, std::span<const Arc> edges) {
  std::vector<Arc> arcs;
  arcs.reserve(edges.size() * 2);
  for (const Arc& e : edges) {
    arcs.push_back(e);
    arcs.push_back(e.reversed());
  }
  return Digraph(vertex_count, std::move(arcs), true);
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto out = out_neighbors(u);
  return std::binary_search(out.begin(), out.end(), v);
}

std::optional<std::size_t> Digraph::arc_index(Arc a) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
  if (it == arcs_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - arcs_.begin());
}

bool Digraph::has_loop() const {
  return std::any_of(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.is_loop(); });
}

bool Digraph::is_symmetric() const {
  return std::all_of(arcs_.begin(), arcs_.end(),
                     [this](const Arc& a) { return has_arc(a.head, a.tail); });
}

Digraph make_clique(std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_parameter, "clique size must be at least 1");
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) arcs.push_back({u, v});
  return Digraph(n, std::move(arcs), true);
}

Digraph make_cycle(std::size_t k) {
  if (k < 3) fail(ErrorCode::invalid_parameter, "cycle length must be at least 3");
  std::vector<Arc> edges;
  for (Vertex i = 0; i < k; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % k)});
  return Digraph::from_edges(k, edges);
}

Digraph make_circular_clique(std::size_t p, std::size_t q) {
  if (q == 0 || p < 2 * q) {
    fail(ErrorCode::invalid_parameter, "circular clique needs q >= 1 and p >= 2q, got " +
                                           std::to_string(p) + "/" + std::to_string(q));
  }
  std::vector<Arc> arcs;
  for (Vertex a = 0; a < p; ++a) {
    for (Vertex b = 0; b < p; ++b) {
      std::size_t d = a > b ? a - b : b - a;
      d = std::min(d, p - d);
      if (d >= q) arcs.push_back({a, b});
    }
  }
  return Digraph(p, std::move(arcs), true);
}

Digraph make_directed_cycle(std::size_t k) {
  if (k == 0) fail(ErrorCode::invalid_parameter, "directed cycle needs at least one vertex");
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < k; ++i) arcs.push_back({i, static_cast<Vertex>((i + 1) % k)});
  return Digraph(k, std::move(arcs), k == 2);
}

Digraph make_petersen() {
  std::vector<Arc> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, static_cast<Vertex>((i + 1) % 5)});
    edges.push_back({i, static_cast<Vertex>(i + 5)});
    edges.push_back({static_cast<Vertex>(i + 5), static_cast<Vertex>((i + 2) % 5 + 5)});
  }
  return Digraph::from_edges(10, edges);
}

std::uint64_t tuple_index(std::span<const Vertex> tuple, std::uint64_t base) {
  std::uint64_t index = 0;
  for (Vertex x : tuple) index = index * base + x;
  return index;
}

std::vector<Vertex> tuple_at(std::uint64_t index, std::uint64_t base, std::size_t length) {
  std::vector<Vertex> tuple(length);
  for (std::size_t i = length; i-- > 0;) {
    tuple[i] = static_cast<Vertex>(index % base);
    index /= base;
  }
  return tuple;
}

std::optional<std::uint64_t> checked_power(std::uint64_t base, std::uint64_t exponent,
                                           std::uint64_t limit) {
  std::uint64_t value = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && value > limit / base) return std::nullopt;
    value *= base;
    if (value > limit) return std::nullopt;
  }
  return value;
}

Digraph tensor_power(const Digraph& g, std::size_t n, std::uint64_t cap) {
  if (n == 0) fail(ErrorCode::invalid_parameter, "tensor power exponent must be at least 1");
  const std::uint64_t base = g.vertex_count();
  auto vertices = checked_power(base, n, cap);
  if (!vertices) {
    fail(ErrorCode::size_limit,
         "tensor power exceeds vertex cap " + std::to_string(cap));
  }
  const auto& arcs = g.arcs();
  std::vector<Arc> product;
  if (!arcs.empty()) {
    auto arc_tuples = checked_power(arcs.size(), n, cap * 64);
    if (!arc_tuples) fail(ErrorCode::size_limit, "tensor power arc count exceeds cap");
    product.reserve(*arc_tuples);
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      std::uint64_t tail = 0, head = 0;
      for (std::size_t i = 0; i < n; ++i) {
        tail = tail * base + arcs[pick[i]].tail;
        head = head * base + arcs[pick[i]].head;
      }
      product.push_back({static_cast<Vertex>(tail), static_cast<Vertex>(head)});
      std::size_t i = n;
      while (i > 0 && ++pick[i - 1] == arcs.size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }
  return Digraph(*vertices, std::move(product), g.undirected());
}

Digraph disjoint_union(const Digraph& g, const Digraph& h) {
  std::vector<Arc> arcs = g.arcs();
  const auto shift = static_cast<Vertex>(g.vertex_count());
  for (const Arc& a : h.arcs()) arcs.push_back({a.tail + shift, a.head + shift});
  return Digraph(g.vertex_count() + h.vertex_count(), std::move(arcs),
                 g.undirected() && h.undirected());
}

Digraph induced_subgraph(const Digraph& g, std::span<const Vertex> vertices) {
  std::vector<std::int64_t> position(g.vertex_count(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) position[vertices[i]] = static_cast<std::int64_t>(i);
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) {
    if (position[a.tail] >= 0 && position[a.head] >= 0) {
      arcs.push_back({static_cast<Vertex>(position[a.tail]), static_cast<Vertex>(position[a.head])});
    }
  }
  return Digraph(vertices.size(), std::move(arcs), g.undirected());
}

namespace {

void require_undirected(const Digraph& g, const char* predicate) {
  if (!g.undirected()) {
    fail(ErrorCode::invalid_input, std::string(predicate) + " requires an undirected graph");
  }
}

}  // namespace

bool is_bipartite(const Digraph& g) {
  require_undirected(g, "is_bipartite");
  std::vector<int> side(g.vertex_count(), -1);
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<Vertex> queue;
    queue.push(s);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop();
      for (Vertex v : g.out_neighbors(u)) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          queue.push(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_square_free(const Digraph& g) {
  require_undirected(g, "is_square_free");
  const std::size_t n = g.vertex_count();
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex c = a + 1; c < n; ++c) {
      std::size_t common = 0;
      for (Vertex b : g.out_neighbors(a)) {
        if (b != a && b != c && g.has_arc(b, c)) ++common;
      }
      if (common >= 2) return false;
    }
  }
  return true;
}

std::size_t component_count(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const Arc& a : g.arcs()) {
    Vertex ra = find(a.tail), rb = find(a.head);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

bool is_connected(const Digraph& g) { return component_count(g) <= 1; }

StructuralReport structural_predicates(const Digraph& g) {
  StructuralReport report;
  report.is_bipartite = is_bipartite(g);
  report.has_loop = g.has_loop();
  report.is_square_free = is_square_free(g);
  report.is_connected = is_connected(g);
  return report;
}

BigInt central_binomial_b(unsigned n) {
  // binomial(n, k) built up multiplicatively stays integral at every step.
  const unsigned k = n / 2;
  BigInt value = 1;
  for (unsigned i = 1; i <= k; ++i) {
    value *= n - k + i;
    value /= i;
  }
  return value;
}

std::uint64_t central_binomial_u64(unsigned n) {
  if (n > 66) fail(ErrorCode::size_limit, "b(n) does not fit in 64 bits for n > 66");
  return central_binomial_b(n).convert_to<std::uint64_t>();
}

}  // namespace homlab
