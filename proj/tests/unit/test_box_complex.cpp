#include <doctest.h>

#include <random>
#include <sstream>

#include "brute.hpp"
#include "homlab/box_complex.hpp"
#include "homlab/error.hpp"
#include "homlab/hom.hpp"

using namespace homlab;

namespace {

bool all_degree_two(const Digraph& g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.out_neighbors(v).size() != 2) return false;
  return true;
}

}  // namespace

TEST_CASE("box complexes of cycles") {
  for (std::size_t k = 3; k <= 9; ++k) {
    const BoxComplex box(make_cycle(k));
    const Digraph skeleton = box.one_skeleton();
    CHECK(skeleton.vertex_count() == 2 * k);
    if (k != 4) CHECK(all_degree_two(skeleton));
    CHECK(component_count(skeleton) == (k % 2 == 1 ? 1u : 2u));
  }
  const BoxComplex c5(make_cycle(5));
  CHECK(c5.maximal_faces().size() == 10);
  for (const Face& f : c5.maximal_faces()) CHECK(f.size() == 2);
}

TEST_CASE("box complex of K4") {
  const BoxComplex box(make_clique(4));
  CHECK(box.vertices().size() == 12);
  CHECK(box.maximal_faces().size() == 14);
  std::size_t stars = 0, splits = 0;
  for (const Face& f : box.maximal_faces()) {
    stars += f.size() == 3;
    splits += f.size() == 4;
  }
  CHECK(stars == 8);
  CHECK(splits == 6);
}

TEST_CASE("maximal faces agree with subset-pair scan") {
  std::mt19937_64 rng(5);
  std::vector<Digraph> graphs{make_cycle(5), make_cycle(6), make_clique(4), make_clique(5),
                              make_circular_clique(7, 2), make_petersen()};
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 30; ++t) {
    std::vector<Arc> edges;
    for (Vertex u = 0; u < 7; ++u)
      for (Vertex v = u + 1; v < 7; ++v)
        if (coin(rng)) edges.push_back({u, v});
    graphs.push_back(Digraph::from_edges(7, edges));
  }
  for (const Digraph& g : graphs) {
    const BoxComplex box(g);
    CHECK(box.maximal_faces() == oracle::brute_maximal_faces(g));
  }
}

TEST_CASE("faces, freeness and involution") {
  const Digraph c5 = make_cycle(5);
  const Arc a01{0, 1}, a10{1, 0}, a21{2, 1};
  CHECK(is_face(c5, std::vector<Arc>{a01}));
  CHECK_FALSE(is_face(c5, std::vector<Arc>{a01, a10}));
  CHECK(is_face(c5, std::vector<Arc>{a01, a21}));
  for (const Digraph& g : {make_clique(4), make_petersen(), make_circular_clique(7, 2)}) {
    const BoxComplex box(g);
    for (const Face& f : box.maximal_faces()) {
      CHECK(box.is_face(f));
      Face reversed;
      for (std::size_t v : f) {
        CHECK(std::find(f.begin(), f.end(), box.involution(v)) == f.end());
        reversed.push_back(box.involution(v));
      }
      CHECK(box.is_face(reversed));
    }
  }
  CHECK_THROWS_AS(BoxComplex(Digraph(2, {{0, 0}, {0, 1}, {1, 0}})), Error);
}

TEST_CASE("face test matches multihomomorphisms on arc pairs") {
  const Digraph k2 = make_clique(2);
  for (const Digraph& g : {make_cycle(5), make_cycle(6), make_clique(4)}) {
    const BoxComplex box(g);
    const auto& arcs = box.vertices();
    for (std::size_t i = 0; i < arcs.size(); ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j) {
        const std::size_t pair[2] = {i, j};
        // Vertex 0 of K2 goes to the tails, vertex 1 to the heads.
        Multihom m{{arcs[i].tail, arcs[j].tail}, {arcs[i].head, arcs[j].head}};
        CHECK(box.is_face(pair) == is_multihom(k2, g, m));
      }
  }
}

TEST_CASE("expanded faces") {
  const BoxComplex box(make_clique(4));
  const auto faces = box.all_faces();
  for (const Face& f : faces) CHECK(box.is_face(f));
  // Count directly: every nonempty arc subset that is a face.
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << 12); ++mask) {
    Face f;
    for (std::size_t i = 0; i < 12; ++i)
      if (mask >> i & 1) f.push_back(i);
    count += box.is_face(f);
  }
  CHECK(faces.size() == count);
}

TEST_CASE("product isomorphism and induced maps") {
  const Arc a{0, 1}, b{1, 0};
  CHECK(product_iso(std::vector<Arc>{a, a}, 2) == Arc{0, 3});
  CHECK(product_iso(std::vector<Arc>{a, b}, 2) == Arc{1, 2});
  CHECK(product_iso(std::vector<Arc>{Arc{3, 4}}, 5) == Arc{3, 4});
  const Digraph c5 = make_cycle(5), k3 = make_clique(3);
  const auto p = Polymorphism::projection(c5, 3, 1);
  const std::vector<Arc> tuple{{0, 1}, {2, 3}, {4, 0}};
  CHECK(induced_map_mu1(p, tuple) == Arc{2, 3});
  // Unary automorphism x -> -x.
  const auto flip = Polymorphism::from_rule(c5, c5, 1, [](std::span<const Vertex> x) {
    return static_cast<Vertex>((5 - x[0]) % 5);
  });
  CHECK(induced_map_mu1(flip, std::vector<Arc>{{0, 1}}) == Arc{0, 4});
  for (const auto& f : enumerate_polymorphisms(c5, k3, 1))
    for (const Arc& arc : c5.arcs()) {
      const std::vector<Arc> one{arc}, rev{arc.reversed()};
      CHECK(induced_map_mu1(f, rev) == induced_map_mu1(f, one).reversed());
    }
}

TEST_CASE("mu1 commutes with minors at vertex level") {
  const Digraph c5 = make_cycle(5), k3 = make_clique(3);
  const auto& arcs = c5.arcs();
  for (const auto& f : enumerate_polymorphisms(c5, k3, 2))
    for (const auto& pi : all_minor_maps(2, 2)) {
      const auto g = minor(f, pi, 2);
      for (const Arc& x : arcs)
        for (const Arc& y : arcs) {
          const std::vector<Arc> tuple{x, y};
          std::vector<Arc> reindexed{tuple[pi[0]], tuple[pi[1]]};
          CHECK(induced_map_mu1(g, tuple) == induced_map_mu1(f, reindexed));
        }
    }
}

TEST_CASE("generator loops") {
  const auto c5 = generator_loop(make_cycle(5));
  CHECK(c5.size() == 10);
  std::vector<Arc> sorted = c5;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == make_cycle(5).arcs());
  CHECK(generator_loop(make_clique(3)).size() == 6);
  CHECK_THROWS_AS(generator_loop(make_cycle(6)), Error);
  for (const Digraph& g : {make_petersen(), make_clique(4), make_circular_clique(7, 2)}) {
    const auto loop = generator_loop(g);
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Arc pair[2] = {loop[i], loop[(i + 1) % loop.size()]};
      CHECK(is_face(g, pair));
    }
  }
}

TEST_CASE("off export") {
  std::ostringstream out;
  write_off(out, BoxComplex(make_cycle(5)));
  CHECK(out.str().rfind("OFF\n10 10 0\n", 0) == 0);
}
