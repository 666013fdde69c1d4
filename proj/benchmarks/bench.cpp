#include <benchmark/benchmark.h>

#include "planarsplit/coloring.hpp"
#include "planarsplit/families.hpp"
#include "planarsplit/graph.hpp"
#include "planarsplit/oracle.hpp"
#include "planarsplit/reducer.hpp"

using namespace planarsplit;

namespace {

void bm_solve_hex(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const PlanarGraph g = hex_patch(side, side);
  const ListAssignment lists = ListAssignment::uniform(g, {0, 1});
  for (auto _ : state) {
    Coloring c = solve(g, lists);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * g.num_vertices());
}
BENCHMARK(bm_solve_hex)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void bm_solve_random(benchmark::State& state) {
  const PlanarGraph g = random_planar_girth6(static_cast<int>(state.range(0)), 7);
  const ListAssignment lists = ListAssignment::uniform(g, {0, 1});
  for (auto _ : state) {
    Coloring c = solve(g, lists);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * g.num_vertices());
}
BENCHMARK(bm_solve_random)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_faces(benchmark::State& state) {
  const PlanarGraph g = hex_patch(20, 20);
  for (auto _ : state) {
    // Copy first: faces() memoizes, and the traversal is what's measured.
    PlanarGraph fresh = g;
    benchmark::DoNotOptimize(fresh.faces());
  }
}
BENCHMARK(bm_faces)->Unit(benchmark::kMicrosecond);

void bm_girth(benchmark::State& state) {
  const PlanarGraph g = random_planar_girth6(2000, 11);
  for (auto _ : state) {
    PlanarGraph fresh = g;
    benchmark::DoNotOptimize(fresh.girth());
  }
}
BENCHMARK(bm_girth)->Unit(benchmark::kMillisecond);

void bm_oracle_cycle(benchmark::State& state) {
  const PlanarGraph g = cycle(static_cast<int>(state.range(0)));
  const ListAssignment lists = ListAssignment::uniform(g, {0, 1});
  const OracleQuery query{OracleProperty::good(2), OracleQuery::Mode::kExists};
  for (auto _ : state) {
    OracleResult r = oracle_search(g, lists, query);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_oracle_cycle)->Arg(6)->Arg(12)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
