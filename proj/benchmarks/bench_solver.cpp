#include <benchmark/benchmark.h>

#include <cmath>

#include "vrm/basis.hpp"
#include "vrm/oracles.hpp"
#include "vrm/solver.hpp"

namespace {

// Exponential step on [1, 8] with the 60-function grid.
struct Problem {
  vrm::PotentialProfile profile = vrm::ExponentialStep{0.5, 1.0};
  vrm::ScatteringSetup setup{1.0, 8.0, 0.0, 0.0, 0.25};
  vrm::BasisSet basis{vrm::kappa_grid(0.1, 0.1, 6.0), {1.0, 8.0}};
};

void BM_PotentialMatrix(benchmark::State& state) {
  Problem p;
  for (auto _ : state)
    benchmark::DoNotOptimize(vrm::potential_matrix(p.basis, p.profile, {}));
}
BENCHMARK(BM_PotentialMatrix)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  Problem p;
  for (auto _ : state)
    benchmark::DoNotOptimize(vrm::assemble_problem(p.basis, p.profile, p.setup, {}));
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

void BM_InnerSolve(benchmark::State& state) {
  Problem p;
  const auto prob = vrm::assemble_problem(p.basis, p.profile, p.setup, {});
  for (auto _ : state) benchmark::DoNotOptimize(vrm::inner_solution(prob.system, 2.0));
}
BENCHMARK(BM_InnerSolve)->Unit(benchmark::kMicrosecond);

void BM_SolveTunneling(benchmark::State& state) {
  Problem p;
  for (auto _ : state)
    benchmark::DoNotOptimize(vrm::solve_tunneling(p.profile, p.setup, p.basis));
}
BENCHMARK(BM_SolveTunneling)->Unit(benchmark::kMillisecond);

void BM_IntegrateReference(benchmark::State& state) {
  Problem p;
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(vrm::integrate_reference(p.profile, p.setup, tol));
}
BENCHMARK(BM_IntegrateReference)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
