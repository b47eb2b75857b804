#include "homlab/hom.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "homlab/error.hpp"

namespace homlab {

HomEnumerator::HomEnumerator(const Digraph& source, const Digraph& target)
    : HomEnumerator(source, target, {}) {}

HomEnumerator::HomEnumerator(const Digraph& source, const Digraph& target,
                             std::vector<Domain> domains)
    : source_(&source), target_(&target) {
  const std::size_t n = source.vertex_count();
  const std::size_t t = target.vertex_count();
  if (!domains.empty() && domains.size() != n) {
    fail(ErrorCode::invalid_parameter, "domain list must have one entry per source vertex");
  }
  out_rows_.assign(t, Domain(t));
  in_rows_.assign(t, Domain(t));
  Domain looped(t);
  for (const Arc& a : target.arcs()) {
    out_rows_[a.tail].set(a.head);
    in_rows_[a.head].set(a.tail);
    if (a.is_loop()) looped.set(a.tail);
  }

  root_.assign(n, Domain(t));
  for (std::size_t v = 0; v < n; ++v) {
    if (domains.empty()) {
      root_[v].set();
    } else {
      if (domains[v].size() != t) {
        fail(ErrorCode::invalid_parameter, "domain size must match target vertex count");
      }
      root_[v] = domains[v];
    }
  }
  for (const Arc& a : source.arcs()) {
    if (a.is_loop()) root_[a.tail] &= looped;
  }
  std::vector<Vertex> queue(n);
  for (std::size_t v = 0; v < n; ++v) queue[v] = static_cast<Vertex>(v);
  const bool empty_domain =
      std::any_of(root_.begin(), root_.end(), [](const Domain& d) { return d.none(); });
  if (empty_domain || !propagate(root_, std::move(queue))) {
    dead_ = true;
    infeasible_ = true;
    root_.clear();
  }
}

Domain HomEnumerator::image(const Domain& domain, const std::vector<Domain>& rows) const {
  Domain result(target_->vertex_count());
  for (auto a = domain.find_first(); a != Domain::npos; a = domain.find_next(a)) result |= rows[a];
  return result;
}

bool HomEnumerator::propagate(std::vector<Domain>& domains, std::vector<Vertex> queue) const {
  std::vector<char> queued(source_->vertex_count(), 0);
  for (Vertex v : queue) queued[v] = 1;
  std::size_t head = 0;
  while (head < queue.size()) {
    const Vertex x = queue[head++];
    queued[x] = 0;
    auto narrow = [&](Vertex y, const Domain& allowed) {
      if (y == x) return true;
      Domain narrowed = domains[y] & allowed;
      if (narrowed == domains[y]) return true;
      if (narrowed.none()) return false;
      domains[y] = std::move(narrowed);
      if (!queued[y]) {
        queued[y] = 1;
        queue.push_back(y);
      }
      return true;
    };
    if (!source_->out_neighbors(x).empty()) {
      const Domain successors = image(domains[x], out_rows_);
      for (Vertex y : source_->out_neighbors(x))
        if (!narrow(y, successors)) return false;
    }
    if (!source_->in_neighbors(x).empty()) {
      const Domain predecessors = image(domains[x], in_rows_);
      for (Vertex y : source_->in_neighbors(x))
        if (!narrow(y, predecessors)) return false;
    }
  }
  return true;
}

void HomEnumerator::shuffle_values(std::uint64_t seed) {
  if (started_) fail(ErrorCode::internal_consistency, "shuffle_values after the search started");
  rng_.emplace(seed);
}

HomEnumerator::Frame HomEnumerator::make_frame(Vertex var, std::vector<Domain> domains) {
  Frame frame{var, std::move(domains), {}, 0};
  const Domain& candidates = frame.saved[var];
  for (auto a = candidates.find_first(); a != Domain::npos; a = candidates.find_next(a))
    frame.order.push_back(static_cast<Vertex>(a));
  if (rng_) std::shuffle(frame.order.begin(), frame.order.end(), *rng_);
  return frame;
}

std::optional<VertexMap> HomEnumerator::next() {
  if (dead_) return std::nullopt;
  const std::size_t n = source_->vertex_count();
  if (!started_) {
    started_ = true;
    if (n == 0) {
      dead_ = true;
      return VertexMap{};
    }
    stack_.push_back(make_frame(0, root_));
  }
  while (!stack_.empty()) {
    Frame& frame = stack_.back();
    if (frame.position == frame.order.size()) {
      stack_.pop_back();
      continue;
    }
    const Vertex value = frame.order[frame.position++];
    std::vector<Domain> domains = frame.saved;
    domains[frame.var].reset();
    domains[frame.var].set(value);
    if (!propagate(domains, {frame.var})) continue;
    if (frame.var + 1 == n) {
      VertexMap map(n);
      for (std::size_t v = 0; v < n; ++v) map[v] = static_cast<Vertex>(domains[v].find_first());
      return map;
    }
    const Vertex next_var = frame.var + 1;
    stack_.push_back(make_frame(next_var, std::move(domains)));
  }
  dead_ = true;
  return std::nullopt;
}

bool is_hom(const Digraph& source, const Digraph& target, const VertexMap& map) {
  if (map.size() != source.vertex_count()) return false;
  for (Vertex x : map)
    if (x >= target.vertex_count()) return false;
  return std::all_of(source.arcs().begin(), source.arcs().end(), [&](const Arc& a) {
    return target.has_arc(map[a.tail], map[a.head]);
  });
}

bool HomEnumerator::solve_component(std::vector<Domain>& domains,
                                    const std::vector<Vertex>& vars) const {
  Vertex best = 0;
  std::size_t best_size = 0;
  std::size_t best_degree = 0;
  for (Vertex v : vars) {
    const std::size_t size = domains[v].count();
    if (size <= 1) continue;
    const std::size_t degree = source_->out_neighbors(v).size() + source_->in_neighbors(v).size();
    if (best_size == 0 || size < best_size || (size == best_size && degree > best_degree)) {
      best = v;
      best_size = size;
      best_degree = degree;
    }
  }
  if (best_size == 0) return true;
  const Domain candidates = domains[best];
  for (auto a = candidates.find_first(); a != Domain::npos; a = candidates.find_next(a)) {
    std::vector<Domain> trial = domains;
    trial[best].reset();
    trial[best].set(a);
    if (propagate(trial, {best}) && solve_component(trial, vars)) {
      domains = std::move(trial);
      return true;
    }
  }
  return false;
}

std::optional<VertexMap> HomEnumerator::solve_any() const {
  if (infeasible_) return std::nullopt;
  const std::size_t n = source_->vertex_count();
  std::vector<Domain> domains = root_;
  std::vector<char> seen(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> component{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < component.size(); ++head) {
      const Vertex v = component[head];
      for (auto side : {source_->out_neighbors(v), source_->in_neighbors(v)})
        for (Vertex w : side)
          if (!seen[w]) {
            seen[w] = 1;
            component.push_back(w);
          }
    }
    if (!solve_component(domains, component)) return std::nullopt;
  }
  VertexMap map(n);
  for (std::size_t v = 0; v < n; ++v) map[v] = static_cast<Vertex>(domains[v].find_first());
  return map;
}

std::optional<VertexMap> find_hom(const Digraph& source, const Digraph& target) {
  return HomEnumerator(source, target).solve_any();
}

std::optional<VertexMap> find_hom(const Digraph& source, const Digraph& target,
                                  std::vector<Domain> domains) {
  return HomEnumerator(source, target, std::move(domains)).solve_any();
}

std::optional<VertexMap> find_least_hom(const Digraph& source, const Digraph& target) {
  HomEnumerator search(source, target);
  return search.next();
}

std::optional<VertexMap> find_least_hom(const Digraph& source, const Digraph& target,
                                        std::vector<Domain> domains) {
  HomEnumerator search(source, target, std::move(domains));
  return search.next();
}

std::optional<VertexMap> sample_hom(const Digraph& source, const Digraph& target,
                                    std::uint64_t seed) {
  HomEnumerator search(source, target);
  search.shuffle_values(seed);
  return search.next();
}

std::vector<VertexMap> all_homs(const Digraph& source, const Digraph& target, std::uint64_t cap) {
  std::vector<VertexMap> result;
  HomEnumerator search(source, target);
  while (auto h = search.next()) {
    if (result.size() >= cap) {
      fail(ErrorCode::size_limit, "more than " + std::to_string(cap) + " homomorphisms");
    }
    result.push_back(std::move(*h));
  }
  return result;
}

bool is_multihom(const Digraph& source, const Digraph& target, const Multihom& sets) {
  if (sets.size() != source.vertex_count()) return false;
  for (const auto& s : sets) {
    if (s.empty()) return false;
    for (Vertex x : s)
      if (x >= target.vertex_count()) return false;
  }
  for (const Arc& a : source.arcs())
    for (Vertex x : sets[a.tail])
      for (Vertex y : sets[a.head])
        if (!target.has_arc(x, y)) return false;
  return true;
}

bool hom_equivalent(const Digraph& h, const Digraph& g) { return has_hom(h, g) && has_hom(g, h); }

namespace {

void extend_clique(const std::vector<Domain>& adjacency, Domain candidates, Domain excluded,
                   std::size_t depth, std::size_t& best) {
  if (candidates.none() && excluded.none()) {
    best = std::max(best, depth);
    return;
  }
  if (depth + candidates.count() <= best) return;
  // Tomita-style pivot: the vertex covering most candidates.
  const Domain pool = candidates | excluded;
  std::size_t pivot = pool.find_first();
  std::size_t pivot_cover = 0;
  for (auto u = pool.find_first(); u != Domain::npos; u = pool.find_next(u)) {
    const std::size_t cover = (candidates & adjacency[u]).count();
    if (cover > pivot_cover) {
      pivot_cover = cover;
      pivot = u;
    }
  }
  const Domain branch = candidates - adjacency[pivot];
  for (auto v = branch.find_first(); v != Domain::npos; v = branch.find_next(v)) {
    extend_clique(adjacency, candidates & adjacency[v], excluded & adjacency[v], depth + 1, best);
    candidates.reset(v);
    excluded.set(v);
  }
}

}  // namespace

std::size_t clique_number(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  std::vector<Domain> adjacency(n, Domain(n));
  for (const Arc& a : g.arcs()) {
    if (a.is_loop()) continue;
    adjacency[a.tail].set(a.head);
    adjacency[a.head].set(a.tail);
  }
  Domain all(n);
  all.set();
  std::size_t best = 0;
  extend_clique(adjacency, all, Domain(n), 0, best);
  return best;
}

std::size_t chromatic_number(const Digraph& g) {
  if (g.has_loop()) fail(ErrorCode::no_coloring, "a graph with a loop has no proper coloring");
  if (g.vertex_count() == 0) return 0;
  for (std::size_t colors = std::max<std::size_t>(1, clique_number(g));; ++colors) {
    if (has_hom(g, make_clique(colors))) return colors;
  }
}

std::optional<OddClosedWalk> shortest_odd_closed_walk(const Digraph& h) {
  const std::size_t n = h.vertex_count();
  std::optional<OddClosedWalk> best;
  for (Vertex s = 0; s < n; ++s) {
    if (h.has_arc(s, s)) {
      return OddClosedWalk{1, {s}};
    }
  }
  // Double cover state (v, parity) encoded as 2v + parity.
  std::vector<std::int64_t> dist(2 * n), parent(2 * n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[2 * s] = 0;
    std::queue<std::size_t> queue;
    queue.push(2 * s);
    while (!queue.empty()) {
      const std::size_t state = queue.front();
      queue.pop();
      if (state == 2 * s + 1) break;
      const Vertex u = static_cast<Vertex>(state / 2);
      for (Vertex v : h.out_neighbors(u)) {
        const std::size_t next = 2 * v + (1 - state % 2);
        if (dist[next] < 0) {
          dist[next] = dist[state] + 1;
          parent[next] = static_cast<std::int64_t>(state);
          queue.push(next);
        }
      }
    }
    if (dist[2 * s + 1] < 0) continue;
    const auto length = static_cast<std::size_t>(dist[2 * s + 1]);
    if (best && best->length <= length) continue;
    std::vector<Vertex> walk(length);
    std::size_t state = 2 * s + 1;
    for (std::size_t i = length; i-- > 0;) {
      state = static_cast<std::size_t>(parent[state]);
      walk[i] = static_cast<Vertex>(state / 2);
    }
    best = OddClosedWalk{length, std::move(walk)};
  }
  return best;
}

}  // namespace homlab
