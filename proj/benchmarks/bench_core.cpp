#include <benchmark/benchmark.h>

#include <dareal/example33.hpp>
#include <dareal/kernels.hpp>
#include <dareal/numerics.hpp>
#include <dareal/realization.hpp>
#include <dareal/sampling.hpp>

using namespace dareal;

namespace {

std::vector<BallPoint> bench_points(int n) {
  SampleGen gen(12345);
  return gen.ball_points(n, 2, 0.9);
}

void BM_TransferEval(benchmark::State& state) {
  Colligation u0 = example33_colligation();
  auto pts = bench_points(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto& p : pts) benchmark::DoNotOptimize(transfer_eval(u0, p));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransferEval)->Arg(10)->Arg(100);

void BM_GramAssembly(benchmark::State& state) {
  KernelSpec ks = KernelSpec::schur(example33_schur());
  auto pts = bench_points(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_kernel(ks, pts, 1));
}
BENCHMARK(BM_GramAssembly)->Arg(20)->Arg(50);

void BM_DomainSubspace(benchmark::State& state) {
  OutputPair p = example33_pair(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(domain_subspace(p));
}
BENCHMARK(BM_DomainSubspace);

void BM_PivotedCholesky(benchmark::State& state) {
  SampleGen gen(999);
  const Index n = state.range(0);
  ComplexMatrix g = gen.gaussian_matrix(n, n / 2);
  ComplexMatrix m = g * g.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(pivoted_cholesky(m));
}
BENCHMARK(BM_PivotedCholesky)->Arg(16)->Arg(64);

void BM_CholeskyRealization(benchmark::State& state) {
  SampleGen gen(31337);
  ComplexMatrix stack = gen.gaussian_matrix(3 * 6 + 3, 6);
  stack *= 0.9 / operator_norm(stack);
  std::vector<ComplexMatrix> blocks;
  for (Index j = 0; j < 3; ++j) blocks.push_back(stack.middleRows(j * 6, 6));
  OutputPair p(stack.bottomRows(3), OperatorTuple(blocks));
  for (auto _ : state)
    benchmark::DoNotOptimize(realize_from_pair_cholesky(p, 21));
}
BENCHMARK(BM_CholeskyRealization);

void BM_FullCompletionPipeline(benchmark::State& state) {
  SchurEvaluator s = example33_schur();
  OutputPair p = example33_pair(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(realize_with_pair(s, p));
}
BENCHMARK(BM_FullCompletionPipeline);

}  // namespace

BENCHMARK_MAIN();
