#include "rpsdp/graph.hpp"
#include "rpsdp/ipm_solver.hpp"
#include "rpsdp/projector.hpp"
#include "rpsdp/relaxations.hpp"
#include "rpsdp/sdp_problem.hpp"

#include <benchmark/benchmark.h>

#include <memory>

using namespace rpsdp;

static void BM_SampleSparse(benchmark::State& st) {
  const Index n = st.range(0);
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(sample_sparse_subgaussian(n, n / 10, 0.1, seed++));
}
BENCHMARK(BM_SampleSparse)->Arg(500)->Arg(2000);

static void BM_SampleAchlioptas(benchmark::State& st) {
  const Index n = st.range(0);
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(sample_achlioptas(n, n / 10, 0.3, seed++));
}
BENCHMARK(BM_SampleAchlioptas)->Arg(500)->Arg(2000);

static void BM_Congruence(benchmark::State& st) {
  const Index n = st.range(0);
  const Projector p = sample_sparse_subgaussian(n, n / 10, 0.3, 7);
  const Graph g = gen_gnp(n, 0.1, 3);
  const SdpProblem prob = maxcut_sdp(g);
  for (auto _ : st) benchmark::DoNotOptimize(congruence(p, prob.c));
}
BENCHMARK(BM_Congruence)->Arg(300)->Arg(800);

static void BM_SolveMaxcut(benchmark::State& st) {
  const Graph g = gen_gnp(st.range(0), 0.2, 5);
  const SdpProblem prob = maxcut_sdp(g);
  for (auto _ : st) benchmark::DoNotOptimize(solve(prob));
}
BENCHMARK(BM_SolveMaxcut)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

static void BM_SolveProjectedMaxcut(benchmark::State& st) {
  const Index n = st.range(0);
  const SdpProblem prob = maxcut_sdp(gen_gnp(n, 0.2, 5));
  const auto p = std::make_shared<const Projector>(sample_sparse_subgaussian(n, n / 10, 0.3, 9));
  const SdpProblem proj = project_problem(prob, p);
  for (auto _ : st) benchmark::DoNotOptimize(solve(proj));
}
BENCHMARK(BM_SolveProjectedMaxcut)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
