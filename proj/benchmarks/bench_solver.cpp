// Micro-benchmarks for the hot paths: sparse matvec, the reduced CG solve,
// and a full solve on a generated logistic problem.

#include <benchmark/benchmark.h>

#include "oba/dataset.hpp"
#include "oba/rng.hpp"
#include "oba/solver.hpp"
#include "oba/subspace.hpp"

using namespace oba;

namespace {

SparseMatrix random_sparse(std::size_t rows, std::size_t cols, double density,
                           std::uint64_t seed) {
  Uniform01 rng(seed);
  std::vector<double> dense(rows * cols, 0.0);
  for (double& v : dense)
    if (rng.next() < density) v = rng.next_signed();
  return SparseMatrix::from_dense(rows, cols, dense);
}

}  // namespace

static void BM_Matvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_sparse(n, n, 0.05, 1);
  Uniform01 rng(2);
  DenseVector v(n);
  for (double& x : v) x = rng.next_signed();
  for (auto _ : state) benchmark::DoNotOptimize(a.matvec(v));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(a.nnz()));
}
BENCHMARK(BM_Matvec)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_ReducedCg(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // SPD operator A'A + 0.1 I applied through the sparse factor
  auto a = random_sparse(n, n, 0.05, 3);
  ReducedSystem sys;
  sys.hess_op = [&a](const DenseVector& v) {
    DenseVector out = a.matvec_transpose(a.matvec(v));
    axpy(0.1, v, out);
    return out;
  };
  Uniform01 rng(4);
  sys.rhs_neg.resize(n);
  for (double& x : sys.rhs_neg) x = rng.next_signed();
  sys.free_mask.assign(n, true);
  sys.ridge = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(solve_reduced(sys, 0.1, n));
}
BENCHMARK(BM_ReducedCg)->Arg(256)->Arg(1024);

static void BM_LogisticSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SyntheticSpec spec{n, 9};
  Dataset ds = generate_synthetic(spec);
  LogisticLoss loss(ds.a, ds.binary_labels());
  SolverConfig cfg;
  cfg.mu = 0.01;
  cfg.outer_tol = 1e-8;
  cfg.max_outer_iters = 500;
  for (auto _ : state) benchmark::DoNotOptimize(solve(loss, DenseVector(n, 0.0), cfg));
}
BENCHMARK(BM_LogisticSolve)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
