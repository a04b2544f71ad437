#include <benchmark/benchmark.h>

#include "compmod/fibration.hpp"
#include "compmod/generators.hpp"
#include "compmod/grothendieck.hpp"

using namespace compmod;

namespace {

Model bench_model() {
  Rng rng(42);
  ModelGenOptions opts;
  opts.max_types = 3;
  opts.max_elements = 3;
  opts.seed_functions = 3;
  return gen_model(rng, opts);
}

void BM_completion_close(benchmark::State& state) {
  Rng rng(42);
  ModelGenOptions opts;
  Model seed = gen_model(rng, opts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(completion_close(seed));
  }
}
BENCHMARK(BM_completion_close);

void BM_validate_model(benchmark::State& state) {
  Model m = bench_model();
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_model(m));
  }
}
BENCHMARK(BM_validate_model);

void BM_build_grothendieck(benchmark::State& state) {
  Rng rng(7);
  auto [m, gamma] = gen_diagonal_instance(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_grothendieck(m, gamma));
  }
}
BENCHMARK(BM_build_grothendieck);

void BM_validate_pr1(benchmark::State& state) {
  Rng rng(7);
  auto [m, gamma] = gen_diagonal_instance(rng);
  GrothendieckModel G = build_grothendieck(m, gamma);
  Simulation pr1 = build_pr1(G);
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_simulation(pr1));
  }
}
BENCHMARK(BM_validate_pr1);

void BM_opfibration_check(benchmark::State& state) {
  Rng rng(7);
  auto [m, gamma] = gen_diagonal_instance(rng);
  GrothendieckModel G = build_grothendieck(m, gamma);
  FibrationContext ctx = make_fibration_context(build_pr1(G));
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_opfibration_simulation(ctx));
  }
}
BENCHMARK(BM_opfibration_check);

void BM_find_trackers(benchmark::State& state) {
  Rng rng(9);
  Model m = gen_model(rng);
  PresheafSimulation sim = gen_presheaf_simulation(rng, m);
  const PartialFunction* f = nullptr;
  for (const auto& [key, fns] : m.homs) {
    (void)key;
    if (!fns.empty()) {
      f = &fns.front();
      break;
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_trackers(*f, sim));
  }
}
BENCHMARK(BM_find_trackers);

}  // namespace

BENCHMARK_MAIN();
