#include "homlab/box_complex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <set>
#include <string>

#include "homlab/error.hpp"
#include "homlab/hom.hpp"

namespace homlab {

BoxComplex::BoxComplex(Digraph base, std::uint64_t cap) : base_(std::move(base)) {
  if (base_.has_loop()) fail(ErrorCode::invalid_input, "box complex needs a loopless graph");
  if (!base_.is_symmetric()) fail(ErrorCode::invalid_input, "box complex needs an undirected graph");
  const auto& arcs = base_.arcs();
  involution_.resize(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) involution_[i] = *base_.arc_index(arcs[i].reversed());

  // Maximal faces are the pairs (U, V) with V = N(U) and U = N(V), U and V
  // nonempty. Every such V is an intersection of neighbourhoods, so close the
  // neighbourhoods under intersection.
  const std::size_t n = base_.vertex_count();
  std::vector<Domain> neighbourhood(n, Domain(n));
  for (const Arc& a : arcs) neighbourhood[a.tail].set(a.head);
  std::set<Domain> heads;
  std::vector<Domain> frontier;
  for (const Domain& nb : neighbourhood)
    if (nb.any() && heads.insert(nb).second) frontier.push_back(nb);
  while (!frontier.empty()) {
    std::vector<Domain> next;
    for (const Domain& v : frontier) {
      for (const Domain& nb : neighbourhood) {
        Domain meet = v & nb;
        if (meet.none() || meet == v) continue;
        if (heads.insert(meet).second) {
          if (heads.size() > cap) fail(ErrorCode::size_limit, "too many maximal faces");
          next.push_back(std::move(meet));
        }
      }
    }
    frontier = std::move(next);
  }
  for (const Domain& v : heads) {
    Face face;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (!v.test(arcs[i].head)) continue;
      // arcs[i].tail is in U exactly when v is inside its neighbourhood.
      if (v.is_subset_of(neighbourhood[arcs[i].tail])) face.push_back(i);
    }
    maximal_faces_.push_back(std::move(face));
  }
  std::sort(maximal_faces_.begin(), maximal_faces_.end());
}

bool BoxComplex::is_face(std::span<const std::size_t> vertex_ids) const {
  std::vector<Arc> arcs;
  for (std::size_t id : vertex_ids) {
    if (id >= vertices().size()) fail(ErrorCode::invalid_parameter, "face vertex out of range");
    arcs.push_back(vertices()[id]);
  }
  return homlab::is_face(base_, arcs);
}

std::vector<Face> BoxComplex::all_faces(std::uint64_t cap) const {
  std::set<Face> faces;
  for (const Face& m : maximal_faces_) {
    if (m.size() >= 63) fail(ErrorCode::size_limit, "maximal face too large to expand");
    const std::uint64_t subsets = std::uint64_t{1} << m.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      Face f;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (mask >> i & 1) f.push_back(m[i]);
      faces.insert(std::move(f));
      if (faces.size() > cap) fail(ErrorCode::size_limit, "too many faces to expand");
    }
  }
  return {faces.begin(), faces.end()};
}

Digraph BoxComplex::one_skeleton() const {
  std::vector<Arc> edges;
  const auto& arcs = vertices();
  for (Vertex i = 0; i < arcs.size(); ++i)
    for (Vertex j = i + 1; j < arcs.size(); ++j) {
      const Arc pair[2] = {arcs[i], arcs[j]};
      if (homlab::is_face(base_, pair)) edges.push_back({i, j});
    }
  return Digraph::from_edges(arcs.size(), edges);
}

bool is_face(const Digraph& g, std::span<const Arc> arcs) {
  for (const Arc& a : arcs)
    for (const Arc& b : arcs)
      if (!g.has_arc(a.tail, b.head)) return false;
  return true;
}

Arc product_iso(std::span<const Arc> arcs, std::size_t base) {
  std::vector<Vertex> tails(arcs.size()), heads(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    tails[i] = arcs[i].tail;
    heads[i] = arcs[i].head;
  }
  return {static_cast<Vertex>(tuple_index(tails, base)), static_cast<Vertex>(tuple_index(heads, base))};
}

Arc induced_map_mu1(const Polymorphism& f, std::span<const Arc> arcs) {
  if (arcs.size() != f.arity()) fail(ErrorCode::invalid_parameter, "need one arc per coordinate");
  std::vector<Vertex> tails(arcs.size()), heads(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    tails[i] = arcs[i].tail;
    heads[i] = arcs[i].head;
  }
  const Arc image{f(tails), f(heads)};
  if (!f.target().has_arc(image)) {
    fail(ErrorCode::corrupt_polymorphism, "an arc tuple maps to a non-arc");
  }
  return image;
}

std::vector<Arc> canonical_cycle_walk(std::size_t k) {
  if (k < 3) fail(ErrorCode::invalid_parameter, "cycle length must be at least 3");
  std::vector<Arc> walk;
  for (std::size_t t = 0; t < k; ++t) {
    walk.push_back({static_cast<Vertex>(2 * t % k), static_cast<Vertex>((2 * t + 1) % k)});
    walk.push_back({static_cast<Vertex>((2 * t + 2) % k), static_cast<Vertex>((2 * t + 1) % k)});
  }
  return walk;
}

std::vector<Arc> generator_loop(const Digraph& h) {
  if (h.has_loop()) fail(ErrorCode::invalid_input, "generator loops need a loopless graph");
  if (!h.is_symmetric()) fail(ErrorCode::invalid_input, "generator loops need an undirected graph");
  const auto odd = shortest_odd_closed_walk(h);
  if (!odd) fail(ErrorCode::no_generator, "bipartite graph has no odd closed walk");
  std::vector<Arc> loop;
  for (const Arc& a : canonical_cycle_walk(odd->length))
    loop.push_back({odd->walk[a.tail], odd->walk[a.head]});
  return loop;
}

void write_off(std::ostream& out, const BoxComplex& complex) {
  const Digraph skeleton = complex.one_skeleton();
  const std::size_t n = skeleton.vertex_count();
  std::vector<Arc> edges;
  for (const Arc& a : skeleton.arcs())
    if (a.tail < a.head) edges.push_back(a);
  out << "OFF\n" << n << ' ' << edges.size() << " 0\n";
  char line[96];
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    std::snprintf(line, sizeof line, "%.6f %.6f 0\n", std::cos(angle), std::sin(angle));
    out << line;
  }
  for (const Arc& e : edges) out << "2 " << e.tail << ' ' << e.head << '\n';
}

}  // namespace homlab
