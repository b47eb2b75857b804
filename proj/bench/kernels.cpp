// Parallel kernels against their serial references. Not part of ctest.
#include <benchmark/benchmark.h>

#include "homlab/box_complex.hpp"
#include "homlab/circle_map.hpp"
#include "homlab/functors.hpp"
#include "homlab/minion.hpp"

using namespace homlab;

namespace {

void pp_power_args(benchmark::internal::Benchmark* b) {
  for (int n : {8, 12, 16}) b->Arg(n);
}

void BM_PpPower(benchmark::State& state) {
  const Digraph g = make_circular_clique(static_cast<std::size_t>(state.range(0)), 3);
  const PPFormula phi = arc_formula();
  for (auto _ : state) benchmark::DoNotOptimize(pp_power(g, phi));
}
BENCHMARK(BM_PpPower)->Apply(pp_power_args)->Unit(benchmark::kMillisecond);

void BM_PpPowerSerial(benchmark::State& state) {
  const Digraph g = make_circular_clique(static_cast<std::size_t>(state.range(0)), 3);
  const PPFormula phi = arc_formula();
  for (auto _ : state) benchmark::DoNotOptimize(pp_power_serial(g, phi));
}
BENCHMARK(BM_PpPowerSerial)->Apply(pp_power_args)->Unit(benchmark::kMillisecond);

void BM_AdjointCheck(benchmark::State& state) {
  const FunctorStep left = make_step(FunctorStep::Kind::arc_digraph);
  const FunctorStep right = right_adjoint(left);
  for (auto _ : state) benchmark::DoNotOptimize(check_adjoint(left, right, 100, 5, 0));
}
BENCHMARK(BM_AdjointCheck)->Unit(benchmark::kMillisecond);

void BM_AdjointCheckSerial(benchmark::State& state) {
  const FunctorStep left = make_step(FunctorStep::Kind::arc_digraph);
  const FunctorStep right = right_adjoint(left);
  for (auto _ : state) benchmark::DoNotOptimize(check_adjoint_serial(left, right, 100, 5, 0));
}
BENCHMARK(BM_AdjointCheckSerial)->Unit(benchmark::kMillisecond);

struct DegreeBatch {
  Digraph c5 = make_cycle(5);
  Digraph k3 = make_clique(3);
  CircleMap s = CircleMap::circular_clique(3, 1);
  std::vector<Arc> generator = generator_loop(c5);
  std::vector<Polymorphism> fs = enumerate_polymorphisms(c5, k3, 2);
};

void BM_DegreeVectors(benchmark::State& state) {
  const DegreeBatch b;
  for (auto _ : state) benchmark::DoNotOptimize(degree_vectors(b.fs, b.generator, b.s));
}
BENCHMARK(BM_DegreeVectors)->Unit(benchmark::kMillisecond);

void BM_DegreeVectorsSerial(benchmark::State& state) {
  const DegreeBatch b;
  for (auto _ : state) benchmark::DoNotOptimize(degree_vectors_serial(b.fs, b.generator, b.s));
}
BENCHMARK(BM_DegreeVectorsSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
