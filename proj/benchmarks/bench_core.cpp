#include <benchmark/benchmark.h>

#include <vector>

#include "incgeo/body.hpp"
#include "incgeo/identify.hpp"
#include "incgeo/measures.hpp"
#include "incgeo/projective.hpp"
#include "incgeo/rng.hpp"
#include "incgeo/witness.hpp"

using namespace incgeo;

namespace {

Body random_polytope(CounterRng& rng, int dim, int m) {
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd p(dim);
    for (int j = 0; j < dim; ++j) p[j] = rng.normal();
    pts.push_back(p);
  }
  Body K = make_polytope(pts);
  return scale_translate(K, 1.0, -vertex_centroid(K));
}

void bm_mixed_volume(benchmark::State& state) {
  int dim = int(state.range(0));
  CounterRng rng(7);
  std::vector<Body> tuple;
  for (int i = 0; i < dim; ++i) tuple.push_back(random_polytope(rng, dim, 12));
  for (auto _ : state) benchmark::DoNotOptimize(mixed_volume(tuple));
}
BENCHMARK(bm_mixed_volume)->Arg(2)->Arg(3);

void bm_minkowski_sum(benchmark::State& state) {
  int dim = int(state.range(0));
  CounterRng rng(8);
  Body A = random_polytope(rng, dim, 16);
  Body B = random_polytope(rng, dim, 16);
  for (auto _ : state) benchmark::DoNotOptimize(minkowski_sum(A, B));
}
BENCHMARK(bm_minkowski_sum)->Arg(2)->Arg(3);

void bm_translative_inclusion(benchmark::State& state) {
  int dim = int(state.range(0));
  CounterRng rng(9);
  Body B = random_polytope(rng, dim, 16);
  Body A = scale_translate(B, 0.6, Eigen::VectorXd::Zero(dim));
  for (auto _ : state) benchmark::DoNotOptimize(translative_inclusion(A, B));
}
BENCHMARK(bm_translative_inclusion)->Arg(2)->Arg(3);

void bm_find_witness(benchmark::State& state) {
  int dim = int(state.range(0));
  CounterRng rng(10);
  Body A = random_polytope(rng, dim, 10);
  Body B = random_polytope(rng, dim, 10);
  A = scale_translate(A, 1.0, 3.0 * Eigen::VectorXd::Unit(dim, 0));
  for (auto _ : state)
    benchmark::DoNotOptimize(find_witness(A, B, "volume", 0.5));
}
BENCHMARK(bm_find_witness)->Arg(2)->Arg(3);

void bm_polarity_identity(benchmark::State& state) {
  int dim = int(state.range(0));
  CounterRng rng(11);
  Body K = random_polytope(rng, dim, 12);
  K = scale_translate(K, std::min(1.0, 0.85 / support(K, Eigen::VectorXd::Unit(dim, 0))),
                      Eigen::VectorXd::Zero(dim));
  for (auto _ : state) benchmark::DoNotOptimize(polarity_identity_check(K));
}
BENCHMARK(bm_polarity_identity)->Arg(2)->Arg(3);

void bm_reuleaux_suite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reuleaux_counterexample(360));
}
BENCHMARK(bm_reuleaux_suite);

}  // namespace

BENCHMARK_MAIN();
