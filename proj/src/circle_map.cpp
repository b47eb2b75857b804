#include "homlab/circle_map.hpp"

#include <algorithm>
#include <exception>
#include <string>

#include "homlab/error.hpp"
#include "homlab/hom.hpp"

namespace homlab {

namespace {

const Turns kHalf(1, 2);

Turns reduce(Turns t) {
  const long long whole = t.numerator() / t.denominator();
  t -= whole;
  if (t < 0) t += 1;
  return t;
}

}  // namespace

CircleMap CircleMap::circular_clique(std::size_t p, std::size_t q) {
  if (q == 0 || !(2 * q < p && p < 4 * q)) {
    fail(ErrorCode::out_of_range, "circular clique map needs 2 < p/q < 4");
  }
  CircleMap m;
  m.reference_ = make_circular_clique(p, q);
  m.base_ = m.reference_;
  m.chart_.resize(p);
  for (Vertex v = 0; v < p; ++v) m.chart_[v] = v;
  m.rule_ = StepRule::shorter_arc;
  m.p_ = p;
  for (const Arc& a : m.reference_.arcs()) {
    if (reduce(m.angle(a.reversed()) - m.angle(a)) != kHalf) {
      fail(ErrorCode::internal_consistency, "circular clique map is not antipodal");
    }
  }
  const BoxComplex box(m.reference_);
  for (const Face& face : box.maximal_faces()) {
    std::vector<Turns> angles;
    for (std::size_t v : face) angles.push_back(m.angle(box.vertices()[v]));
    if (circular_span(angles) >= kHalf) {
      fail(ErrorCode::internal_consistency, "a face of the circular clique spans half a turn");
    }
  }
  return m;
}

CircleMap CircleMap::square_free(const Digraph& g) {
  if (g.has_loop() || !g.is_symmetric()) {
    fail(ErrorCode::invalid_input, "square-free map needs an undirected loopless graph");
  }
  if (is_bipartite(g)) fail(ErrorCode::invalid_input, "square-free map needs a non-bipartite graph");
  if (!is_square_free(g)) fail(ErrorCode::invalid_input, "graph contains a 4-cycle");
  CircleMap m;
  m.reference_ = g;
  m.base_ = g;
  m.chart_.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) m.chart_[v] = v;
  m.rule_ = StepRule::semicircle;
  const BoxComplex box(g);
  for (const Face& face : box.maximal_faces()) {
    if (face.size() < 2) continue;
    const Arc first = box.vertices()[face.front()];
    const bool common_tail = std::all_of(face.begin(), face.end(), [&](std::size_t v) {
      return box.vertices()[v].tail == first.tail;
    });
    const bool common_head = std::all_of(face.begin(), face.end(), [&](std::size_t v) {
      return box.vertices()[v].head == first.head;
    });
    if (common_tail == common_head) {
      fail(ErrorCode::internal_consistency, "face with neither a common tail nor a common head");
    }
  }
  return m;
}

CircleMap CircleMap::pull_back(const Digraph& base, VertexMap chart) const {
  if (!is_hom(base, base_, chart)) {
    fail(ErrorCode::invalid_input, "chart is not a homomorphism into the map's base");
  }
  CircleMap m = *this;
  m.base_ = base;
  for (Vertex& v : chart) v = chart_[v];
  m.chart_ = std::move(chart);
  return m;
}

Arc CircleMap::chart_image(Arc arc) const {
  if (!base_.has_arc(arc)) fail(ErrorCode::invalid_parameter, "not an arc of the circle map's base");
  return {chart_[arc.tail], chart_[arc.head]};
}

Turns CircleMap::reference_angle(Arc a) const {
  if (rule_ == StepRule::semicircle) return a.tail < a.head ? Turns(0) : kHalf;
  const long long p = static_cast<long long>(p_);
  const Turns quarter = a.tail < a.head ? Turns(1, 4) : Turns(3, 4);
  return reduce(Turns(static_cast<long long>(a.tail) + a.head, 2 * p) + quarter);
}

Turns CircleMap::angle(Arc arc) const { return reference_angle(chart_image(arc)); }

Turns CircleMap::step(Arc from, Arc to) const {
  const Arc pair[2] = {from, to};
  if (!is_face(base_, pair)) {
    fail(ErrorCode::certificate_violation, "consecutive arcs do not share a face");
  }
  const Arc a = chart_image(from);
  const Arc b = chart_image(to);
  const Turns alpha = reference_angle(a);
  const Turns beta = reference_angle(b);
  if (rule_ == StepRule::shorter_arc) {
    Turns d = reduce(beta - alpha);
    if (d == kHalf) fail(ErrorCode::degenerate_step, "step of exactly half a turn");
    if (d > kHalf) d -= 1;
    return d;
  }
  if (alpha == beta) return 0;
  // Faces with a common tail sit on the upper semicircle, common heads on the lower.
  Turns d;
  if (a.tail == b.tail) {
    d = kHalf;
  } else if (a.head == b.head) {
    d = -kHalf;
  } else {
    fail(ErrorCode::certificate_violation, "antipodal step outside a star face");
  }
  return alpha == Turns(0) ? d : -d;
}

Turns circular_span(std::vector<Turns> angles) {
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  if (angles.size() <= 1) return 0;
  Turns widest_gap = angles.front() + 1 - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i)
    widest_gap = std::max(widest_gap, angles[i] - angles[i - 1]);
  return 1 - widest_gap;
}

long long winding_number(const CircleMap& m, std::span<const Arc> walk) {
  Turns total = 0;
  for (std::size_t i = 0; i < walk.size(); ++i) total += m.step(walk[i], walk[(i + 1) % walk.size()]);
  if (total.denominator() != 1) {
    fail(ErrorCode::certificate_violation, "walk does not close up to a whole number of turns");
  }
  return kWindingOrientation * total.numerator();
}

namespace {

void certify(const Digraph& h, const std::vector<Arc>& x, const std::vector<Arc>& y) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Arc pair[2] = {x[j], y[j]};
    if (!is_face(h, pair)) {
      fail(ErrorCode::certificate_violation, "loop tuples do not share a face in coordinate " +
                                                  std::to_string(j));
    }
  }
}

template <class TupleAt>
std::vector<Arc> loop_image(const Polymorphism& f, std::size_t length, TupleAt tuple_at_step) {
  std::vector<Arc> image;
  image.reserve(length);
  std::vector<Arc> first = tuple_at_step(0);
  std::vector<Arc> current = first;
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<Arc> next = t + 1 < length ? tuple_at_step(t + 1) : first;
    certify(f.source(), current, next);
    image.push_back(induced_map_mu1(f, current));
    current = std::move(next);
  }
  return image;
}

}  // namespace

std::vector<Arc> coordinate_loop_image(const Polymorphism& f, std::span<const Arc> generator,
                                       std::size_t i) {
  if (i >= f.arity()) fail(ErrorCode::invalid_parameter, "coordinate out of range");
  if (generator.empty()) fail(ErrorCode::invalid_parameter, "empty generator loop");
  return loop_image(f, generator.size(), [&](std::size_t t) {
    std::vector<Arc> tuple(f.arity(), generator[0]);
    tuple[i] = generator[t];
    return tuple;
  });
}

std::vector<Arc> diagonal_loop_image(const Polymorphism& f, std::span<const Arc> generator) {
  if (generator.empty()) fail(ErrorCode::invalid_parameter, "empty generator loop");
  return loop_image(f, generator.size(),
                    [&](std::size_t t) { return std::vector<Arc>(f.arity(), generator[t]); });
}

namespace {

void check_target(const Polymorphism& f, const CircleMap& s) {
  if (!(s.base() == f.target())) {
    fail(ErrorCode::invalid_parameter, "circle map is not defined on the polymorphism's target");
  }
}

}  // namespace

DegreeVector degree_vector(const Polymorphism& f, const CircleMap& s) {
  const auto generator = generator_loop(f.source());
  return degree_vector(f, generator, s);
}

DegreeVector degree_vector(const Polymorphism& f, std::span<const Arc> generator,
                           const CircleMap& s) {
  check_target(f, s);
  DegreeVector out;
  out.k = generator.size() / 2;
  out.c.c.resize(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) {
    out.c.c[i] = winding_number(s, coordinate_loop_image(f, generator, i));
  }
  return out;
}

long long diagonal_degree(const Polymorphism& f, const CircleMap& s) {
  check_target(f, s);
  const auto generator = generator_loop(f.source());
  return winding_number(s, diagonal_loop_image(f, generator));
}

std::vector<DegreeVector> degree_vectors(std::span<const Polymorphism> fs,
                                         std::span<const Arc> generator, const CircleMap& s) {
  std::vector<DegreeVector> out(fs.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(fs.size()); ++i) {
    try {
      out[i] = degree_vector(fs[i], generator, s);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<DegreeVector> degree_vectors_serial(std::span<const Polymorphism> fs,
                                                std::span<const Arc> generator,
                                                const CircleMap& s) {
  std::vector<DegreeVector> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(degree_vector(f, generator, s));
  return out;
}

long long compute_bound_n(const Digraph& h, const Digraph& g, const CircleMap& s) {
  const auto generator = generator_loop(h);
  PolymorphismEnumerator it(h, g, 2);
  long long bound = 0;
  bool any = false;
  while (auto f = it.next()) {
    any = true;
    const auto d = degree_vector(*f, generator, s);
    bound = std::max(bound, std::abs(d.c.c[0]) + std::abs(d.c.c[1]));
  }
  if (!any) fail(ErrorCode::invalid_input, "no binary polymorphisms");
  return bound;
}

}  // namespace homlab
