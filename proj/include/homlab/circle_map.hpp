#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "homlab/box_complex.hpp"
#include "homlab/graph.hpp"
#include "homlab/minion.hpp"

namespace homlab {

/// Exact angle measured in full turns.
using Turns = boost::rational<long long>;

enum class StepRule { shorter_arc, semicircle };

/// Windings are reported as kWindingOrientation times the counter-clockwise
/// turn count, which makes the canonical walk of Box(C_k) wind +1 under the
/// circular clique maps.
inline constexpr long long kWindingOrientation = -1;

/// Z2-map from Box(G) to the circle, given on vertices (arcs of G).
/// Angles live on a reference graph (a circular clique or a square-free graph);
/// G reaches it through a chart homomorphism, identity for the reference itself.
class CircleMap {
 public:
  /// Regular p-gon construction: arc (a,b) goes to the direction of x_b - x_a.
  /// out-of-range unless 2 < p/q < 4.
  static CircleMap circular_clique(std::size_t p, std::size_t q);
  /// E+ = arcs u -> v with u < v at angle 0, E- at 1/2. invalid-input when G
  /// has a square, a loop, or is bipartite.
  static CircleMap square_free(const Digraph& g);

  /// The same map seen from `base` through a homomorphism chart: base -> base().
  CircleMap pull_back(const Digraph& base, VertexMap chart) const;

  const Digraph& base() const { return base_; }
  const Digraph& reference() const { return reference_; }
  const VertexMap& chart() const { return chart_; }
  StepRule rule() const { return rule_; }
  /// p of the circular clique, 0 for square-free maps.
  std::size_t p() const { return p_; }

  /// Angle in [0,1) of an arc of base().
  Turns angle(Arc arc) const;
  /// Displacement from `from` to `to`, which must share a face of Box(base()).
  Turns step(Arc from, Arc to) const;

 private:
  CircleMap() = default;
  Arc chart_image(Arc arc) const;
  Turns reference_angle(Arc ref_arc) const;

  Digraph base_;
  Digraph reference_;
  VertexMap chart_;
  StepRule rule_ = StepRule::shorter_arc;
  std::size_t p_ = 0;
};

/// Largest circular gap complement: the length of the shortest arc of the
/// circle containing all the given angles.
Turns circular_span(std::vector<Turns> angles);

/// Oriented winding of a closed arc walk of m.base() (the last arc steps back
/// to the first). Each consecutive pair must share a face; certificate-violation
/// otherwise or when the turns do not sum to an integer; degenerate-step for an
/// exact half-turn under the shorter-arc rule.
long long winding_number(const CircleMap& m, std::span<const Arc> walk);

struct DegreeVector {
  LinearFn c;
  std::size_t k = 0;
};

/// Image under mu_1(f) of the loop that runs `generator` in slot i and holds the
/// base arc generator[0] elsewhere. Consecutive tuples are certified to share a
/// face componentwise before mapping.
std::vector<Arc> coordinate_loop_image(const Polymorphism& f, std::span<const Arc> generator,
                                       std::size_t i);
/// Same with every slot running the generator.
std::vector<Arc> diagonal_loop_image(const Polymorphism& f, std::span<const Arc> generator);

/// Per-coordinate windings of f: H^n -> G with s a circle map on G.
/// `generator` defaults to generator_loop(H).
DegreeVector degree_vector(const Polymorphism& f, const CircleMap& s);
DegreeVector degree_vector(const Polymorphism& f, std::span<const Arc> generator,
                           const CircleMap& s);
long long diagonal_degree(const Polymorphism& f, const CircleMap& s);

/// degree_vector over a batch, in parallel; the result is in input order.
std::vector<DegreeVector> degree_vectors(std::span<const Polymorphism> fs,
                                         std::span<const Arc> generator, const CircleMap& s);
std::vector<DegreeVector> degree_vectors_serial(std::span<const Polymorphism> fs,
                                                std::span<const Arc> generator,
                                                const CircleMap& s);

/// Max of |c_1| + |c_2| over binary polymorphisms H -> G.
long long compute_bound_n(const Digraph& h, const Digraph& g, const CircleMap& s);

}  // namespace homlab
