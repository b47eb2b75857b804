#include <doctest.h>

#include <cmath>
#include <numbers>

#include "homlab/circle_map.hpp"
#include "homlab/error.hpp"
#include "ray.hpp"

using namespace homlab;

namespace {

VertexMap c5_chart() { return {0, 2, 4, 1, 3}; }

CircleMap c5_map() {
  return CircleMap::circular_clique(5, 2).pull_back(make_cycle(5), c5_chart());
}

std::vector<Arc> reversed_walk(std::vector<Arc> w) {
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

TEST_CASE("circular clique angles") {
  const auto m = CircleMap::circular_clique(5, 2);
  CHECK(m.angle({0, 2}) == Turns(2, 10) + Turns(1, 4));
  // (0,1) is not an arc of K_{5/2}; evaluate the formula through K_{5/2} pulled to C5.
  const auto c5 = c5_map();
  CHECK(c5.angle({0, 1}) == Turns(1, 5) + Turns(1, 4));
  // atan2 of x_b - x_a on the regular pentagon.
  for (const Arc& a : m.reference().arcs()) {
    const double ta = 2 * std::numbers::pi * a.tail / 5, tb = 2 * std::numbers::pi * a.head / 5;
    double turns = std::atan2(std::sin(tb) - std::sin(ta), std::cos(tb) - std::cos(ta)) /
                   (2 * std::numbers::pi);
    if (turns < 0) turns += 1;
    CHECK(boost::rational_cast<double>(m.angle(a)) == doctest::Approx(turns));
  }
}

TEST_CASE("circular clique formula on (0,1)") {
  // K_{11/3}... the pair (0,1) is an arc only when q = 1.
  const auto k3 = CircleMap::circular_clique(3, 1);
  CHECK(k3.angle({0, 1}) == Turns(1, 6) + Turns(1, 4));
  CHECK(k3.angle({1, 0}) == Turns(1, 6) + Turns(3, 4));
}

TEST_CASE("circular clique maps are valid exactly in range") {
  for (std::size_t p = 3; p <= 20; ++p)
    for (std::size_t q = 1; 2 * q <= p; ++q) {
      const bool in_range = 2 * q < p && p < 4 * q;
      if (!in_range) {
        CHECK_THROWS_AS(CircleMap::circular_clique(p, q), Error);
        continue;
      }
      const auto m = CircleMap::circular_clique(p, q);
      for (const Arc& a : m.reference().arcs()) {
        Turns d = m.angle(a.reversed()) - m.angle(a);
        if (d < 0) d += 1;
        CHECK(d == Turns(1, 2));
      }
    }
}

TEST_CASE("circular span") {
  CHECK(circular_span({Turns(1, 10), Turns(9, 10)}) == Turns(1, 5));
  CHECK(circular_span({Turns(0), Turns(1, 4), Turns(1, 2)}) == Turns(1, 2));
  CHECK(circular_span({Turns(1, 3)}) == Turns(0));
}

TEST_CASE("square-free maps") {
  CHECK_NOTHROW(CircleMap::square_free(make_cycle(5)));
  CHECK_NOTHROW(CircleMap::square_free(make_cycle(7)));
  CHECK_NOTHROW(CircleMap::square_free(make_petersen()));
  CHECK_THROWS_AS(CircleMap::square_free(make_clique(4)), Error);
  CHECK_THROWS_AS(CircleMap::square_free(make_cycle(6)), Error);
  const auto m = CircleMap::square_free(make_petersen());
  for (const Arc& a : m.base().arcs()) {
    Turns d = m.angle(a.reversed()) - m.angle(a);
    if (d < 0) d += 1;
    CHECK(d == Turns(1, 2));
  }
}

TEST_CASE("generator winding") {
  const auto loop = generator_loop(make_cycle(5));
  CHECK(winding_number(c5_map(), loop) == 1);
  CHECK(winding_number(c5_map(), reversed_walk(loop)) == -1);
  CHECK(winding_number(CircleMap::circular_clique(3, 1), generator_loop(make_clique(3))) == 1);
  const std::vector<Arc> still{{0, 1}, {0, 1}, {0, 1}};
  CHECK(winding_number(c5_map(), still) == 0);
  // Twice around, additive at the shared base point.
  std::vector<Arc> twice = loop;
  twice.insert(twice.end(), loop.begin(), loop.end());
  CHECK(winding_number(c5_map(), twice) == 2);
  // Pointwise reversal commutes with the antipodal action.
  std::vector<Arc> antipodal;
  for (const Arc& a : loop) antipodal.push_back(a.reversed());
  CHECK(winding_number(c5_map(), antipodal) == 1);
  CHECK(winding_number(CircleMap::square_free(make_cycle(5)), antipodal) ==
        winding_number(CircleMap::square_free(make_cycle(5)), loop));
}

TEST_CASE("winding rejects bad walks") {
  const std::vector<Arc> jump{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(winding_number(c5_map(), jump), Error);
}

TEST_CASE("ray crossing oracle agrees") {
  std::vector<std::pair<CircleMap, Digraph>> maps{
      {c5_map(), make_cycle(5)},
      {CircleMap::circular_clique(7, 2), make_circular_clique(7, 2)},
      {CircleMap::circular_clique(11, 3), make_circular_clique(11, 3)},
      {CircleMap::square_free(make_cycle(5)), make_cycle(5)},
      {CircleMap::square_free(make_cycle(7)), make_cycle(7)},
      {CircleMap::square_free(make_petersen()), make_petersen()}};
  for (const auto& [m, g] : maps) {
    const auto loop = generator_loop(g);
    CHECK(winding_number(m, loop) == kWindingOrientation * oracle::ray_winding_ccw(m, loop));
    const auto back = reversed_walk(loop);
    CHECK(winding_number(m, back) == kWindingOrientation * oracle::ray_winding_ccw(m, back));
  }
}

TEST_CASE("degree vectors of simple polymorphisms") {
  const Digraph c5 = make_cycle(5);
  const auto s = c5_map();
  for (std::size_t i = 0; i < 3; ++i) {
    const auto d = degree_vector(Polymorphism::projection(c5, 3, i), s);
    std::vector<long long> e(3, 0);
    e[i] = 1;
    CHECK(d.c.c == e);
    CHECK(d.k == 5);
  }
  const auto flip = Polymorphism::from_rule(c5, c5, 1, [](std::span<const Vertex> x) {
    return static_cast<Vertex>((5 - x[0]) % 5);
  });
  CHECK(degree_vector(flip, s).c.c == std::vector<long long>{-1});
  CHECK(diagonal_degree(Polymorphism::projection(c5, 1, 0), s) == 1);
  CHECK(diagonal_degree(Polymorphism::projection(c5, 2, 0), s) == 1);
  CHECK_THROWS_AS(degree_vector(flip, CircleMap::circular_clique(3, 1)), Error);
}

TEST_CASE("odd degrees on Pol(C5,K3) and Pol(C7,C7)") {
  const Digraph c5 = make_cycle(5), k3 = make_clique(3), c7 = make_cycle(7);
  const auto s = CircleMap::circular_clique(3, 1);
  for (std::size_t n = 1; n <= 2; ++n)
    for (const auto& f : enumerate_polymorphisms(c5, k3, n)) {
      const auto d = degree_vector(f, s);
      long long sum = 0;
      for (long long c : d.c.c) sum += c;
      CHECK(sum % 2 != 0);
      CHECK(diagonal_degree(f, s) == sum);
    }
  const auto s7 = CircleMap::circular_clique(7, 3).pull_back(c7, {0, 3, 6, 2, 5, 1, 4});
  for (const auto& f : enumerate_polymorphisms(c7, c7, 1)) CHECK(diagonal_degree(f, s7) % 2 != 0);
}

TEST_CASE("parallel degree batch matches the serial one") {
  const auto s = CircleMap::circular_clique(3, 1);
  const Digraph c5 = make_cycle(5), k3 = make_clique(3);
  const auto fs = enumerate_polymorphisms(c5, k3, 2);
  const auto generator = generator_loop(c5);
  const auto par = degree_vectors(fs, generator, s);
  const auto ser = degree_vectors_serial(fs, generator, s);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i].c.c == ser[i].c.c);
}
