#include <doctest.h>

#include "brute.hpp"
#include "homlab/error.hpp"
#include "homlab/minion.hpp"

using namespace homlab;

namespace {

std::vector<std::vector<Vertex>> tables(const std::vector<Polymorphism>& fs) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& f : fs) out.push_back(f.table());
  return out;
}

}  // namespace

TEST_CASE("polymorphism counts match table enumeration") {
  const Digraph k2 = make_clique(2), k3 = make_clique(3), c5 = make_cycle(5);
  CHECK(enumerate_polymorphisms(k3, k3, 1).size() == 6);
  CHECK(enumerate_polymorphisms(k3, k3, 2).size() == 12);
  CHECK(enumerate_polymorphisms(k2, k2, 2).size() == 4);
  CHECK(tables(enumerate_polymorphisms(k3, k3, 2)) == oracle::brute_polymorphisms(k3, k3, 2));
  CHECK(tables(enumerate_polymorphisms(k2, k3, 2)) == oracle::brute_polymorphisms(k2, k3, 2));
  CHECK(tables(enumerate_polymorphisms(c5, k3, 1)) == oracle::brute_polymorphisms(c5, k3, 1));
  const Digraph d3 = make_directed_cycle(3);
  CHECK(tables(enumerate_polymorphisms(d3, d3, 2)) == oracle::brute_polymorphisms(d3, d3, 2));
}

TEST_CASE("table construction rejects non-polymorphisms") {
  const Digraph k3 = make_clique(3);
  CHECK_THROWS_AS(Polymorphism::from_table(k3, k3, 1, {0, 0, 1}), Error);
  CHECK_THROWS_AS(Polymorphism::from_table(k3, k3, 1, {0, 1}), Error);
  CHECK_NOTHROW(Polymorphism::from_table(k3, k3, 1, {2, 0, 1}));
  CHECK_THROWS_AS(Polymorphism::from_rule(k3, k3, 2, [](std::span<const Vertex>) { return Vertex{0}; }),
                  Error);
}

TEST_CASE("minors") {
  const Digraph k3 = make_clique(3);
  const auto fs = enumerate_polymorphisms(k3, k3, 2);
  for (const auto& f : fs) {
    CHECK(minor(f, {0, 1}, 2).table() == f.table());
    const auto diag = minor(f, {0, 0}, 1);
    for (Vertex x = 0; x < 3; ++x) {
      const std::vector<Vertex> xx{x, x}, single{x};
      CHECK(diag(single) == f(xx));
    }
  }
  const auto p = Polymorphism::projection(k3, 3, 0).materialized();
  const auto q = minor(p, {2, 0, 1}, 3);
  CHECK(q == Polymorphism::projection(k3, 3, 2));
  CHECK_THROWS_AS(minor(p, {0, 3, 1}, 3), Error);
  CHECK_THROWS_AS(minor(p, {0, 1}, 3), Error);
}

TEST_CASE("minor composition") {
  const Digraph c5 = make_cycle(5), k3 = make_clique(3);
  const auto f = *sample_polymorphism(c5, k3, 3, 4);
  for (const auto& pi : all_minor_maps(3, 2))
    for (const auto& rho : all_minor_maps(2, 2))
      CHECK(minor(minor(f, pi, 2), rho, 2) == minor(f, compose(pi, rho), 2));
}

TEST_CASE("Pol(H,G) is closed under minors") {
  const Digraph k2 = make_clique(2), k3 = make_clique(3);
  for (const auto& [h, g] : {std::pair{k2, k3}, std::pair{k3, k3}, std::pair{k2, k2}}) {
    const auto unary = tables(enumerate_polymorphisms(h, g, 1));
    const auto binary = tables(enumerate_polymorphisms(h, g, 2));
    for (const auto& f : enumerate_polymorphisms(h, g, 2)) {
      for (const auto& pi : all_minor_maps(2, 1)) {
        const auto t = minor(f, pi, 1).table();
        CHECK(std::find(unary.begin(), unary.end(), t) != unary.end());
      }
      for (const auto& pi : all_minor_maps(2, 2)) {
        const auto t = minor(f, pi, 2).table();
        CHECK(std::find(binary.begin(), binary.end(), t) != binary.end());
      }
    }
  }
}

TEST_CASE("essential coordinates") {
  const Digraph k3 = make_clique(3);
  CHECK(essential_coords(Polymorphism::projection(k3, 3, 1).materialized()) ==
        std::vector<std::size_t>{1});
  const Digraph looped(2, {{0, 0}, {0, 1}, {1, 0}});
  const auto constant =
      Polymorphism::from_rule(k3, looped, 2, [](std::span<const Vertex>) { return Vertex{0}; });
  CHECK(essential_coords(constant.materialized()).empty());
  CHECK_THROWS_AS(essential_coords(Polymorphism::projection(k3, 2, 0)), Error);
  const Digraph c5 = make_cycle(5);
  const auto spike = all_ones_spike(c5, k3, 4).materialized();
  CHECK(essential_coords(spike) == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK_NOTHROW(Polymorphism::from_table(c5, k3, 4, spike.table()));
  // Injective minors carry essential coordinates along.
  const auto f = all_ones_spike(c5, k3, 2).materialized();
  CHECK(essential_coords(minor(f, {2, 0}, 3)) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("linear minion") {
  CHECK(z_leq_n_member({{1}}, 1));
  CHECK(z_leq_n_member({{2, -1}}, 3));
  CHECK_FALSE(z_leq_n_member({{2, -1}}, 2));
  CHECK_FALSE(z_leq_n_member({{1, 1}}, 100));
  CHECK(linear_minor({{3, -2}}, {0, 0}, 1) == LinearFn{{1}});
  CHECK(linear_minor({{3, -2}}, {0, 1}, 2) == LinearFn{{3, -2}});
  CHECK(linear_minor({{1, 0, 2}}, {1, 1, 0}, 2) == LinearFn{{2, 1}});
  // Membership survives minors.
  for (const auto& pi : all_minor_maps(3, 2)) CHECK(z_leq_n_member(linear_minor({{2, -1, 2}}, pi, 2), 5));
}

TEST_CASE("h-loop condition") {
  const Digraph k3 = make_clique(3);
  const Digraph loop(1, {{0, 0}});
  for (const auto& f : enumerate_polymorphisms(k3, k3, 1)) CHECK(h_loop_check(loop, f));
  const Digraph k2 = make_clique(2);
  CHECK_FALSE(h_loop_check(k2, Polymorphism::projection(k3, 2, 0)));
  CHECK_THROWS_AS(h_loop_check(k2, Polymorphism::projection(k3, 3, 0)), Error);
  // A loopless target never has a symmetric binary polymorphism from a graph with an edge.
  const Digraph c5 = make_cycle(5);
  for (const auto& f : enumerate_polymorphisms(c5, k3, 2)) CHECK_FALSE(h_loop_check(k2, f));
  // With a looped target the symmetric members exist and are detected.
  const Digraph looped(2, {{0, 0}, {0, 1}, {1, 0}});
  std::size_t symmetric = 0;
  for (const auto& f : enumerate_polymorphisms(c5, looped, 2)) {
    bool sym = true;
    for (Vertex x = 0; x < 5; ++x)
      for (Vertex y = 0; y < 5; ++y) {
        const std::vector<Vertex> a{x, y}, b{y, x};
        sym = sym && f(a) == f(b);
      }
    CHECK(h_loop_check(k2, f) == sym);
    symmetric += sym;
  }
  CHECK(symmetric > 0);
}
