#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/minion.hpp"

namespace homlab {

/// A face given by indices into BoxComplex::vertices(), sorted ascending.
using Face = std::vector<std::size_t>;

/// Hom(K2, G) for an undirected loopless G. Vertices are the arcs of G in
/// sorted order; the involution reverses arcs; faces are the arc sets inside
/// some U x V contained in E(G). Only maximal faces are stored.
class BoxComplex {
 public:
  explicit BoxComplex(Digraph base, std::uint64_t cap = caps::kMaximalFaces);

  const Digraph& base() const { return base_; }
  const std::vector<Arc>& vertices() const { return base_.arcs(); }
  std::size_t involution(std::size_t v) const { return involution_[v]; }
  const std::vector<std::size_t>& involution() const { return involution_; }
  /// Canonically sorted, pairwise incomparable.
  const std::vector<Face>& maximal_faces() const { return maximal_faces_; }

  bool is_face(std::span<const std::size_t> vertex_ids) const;
  /// Every nonempty face; size-limit past cap.
  std::vector<Face> all_faces(std::uint64_t cap = caps::kMaximalFaces) const;
  /// Graph on the vertices of the complex joining two arcs that form a face.
  Digraph one_skeleton() const;

 private:
  Digraph base_;
  std::vector<std::size_t> involution_;
  std::vector<Face> maximal_faces_;
};

inline BoxComplex build_box_complex(const Digraph& g,
                                    std::uint64_t cap = caps::kMaximalFaces) {
  return BoxComplex(g, cap);
}

/// tails(arcs) x heads(arcs) is contained in E(g).
bool is_face(const Digraph& g, std::span<const Arc> arcs);

/// ((u_1,v_1),..,(u_n,v_n)) |-> ((u_1..u_n),(v_1..v_n)) as an arc of H^n
/// with vertices numbered by tuple_index.
Arc product_iso(std::span<const Arc> arcs, std::size_t base);

/// (f(u_1..u_n), f(v_1..v_n)); corrupt-polymorphism when that is not an arc.
Arc induced_map_mu1(const Polymorphism& f, std::span<const Arc> arcs);

/// The closed walk (0,1),(2,1),(2,3),(4,3),... through all 2k arcs of C_k.
std::vector<Arc> canonical_cycle_walk(std::size_t k);

/// canonical_cycle_walk pushed through a shortest odd closed walk C_k -> H.
/// Consecutive arcs (cyclically) share a face. no-generator when H is bipartite.
std::vector<Arc> generator_loop(const Digraph& h);

/// OFF rendering of the 1-skeleton, vertices placed on a circle.
void write_off(std::ostream& out, const BoxComplex& complex);

}  // namespace homlab
