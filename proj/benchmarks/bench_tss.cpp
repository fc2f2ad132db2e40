#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "tss/rng.hpp"
#include "tss/tss.hpp"

namespace {

// Long chains of random generators drift in scale, so the timing instances
// come from block tridiagonal matrices: bounded entries at any length, rank
// equal to the block size on every edge.
tss::GraphPartitionedMatrix make_instance(int nodes, int block,
                                          std::uint64_t seed) {
  tss::RootedTree tree = tss::line_tree(nodes);
  tss::BlockLayout layout = tss::BlockLayout::uniform(nodes, block, block);
  return tss::tree_sparse_matrix(tree, layout, seed);
}

void BM_construct(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  tss::GraphPartitionedMatrix dense = make_instance(nodes, 2, 7);
  for (auto _ : state) {
    tss::TssMatrix t = tss::construct_tss(dense);
    benchmark::DoNotOptimize(&t);
  }
  state.SetComplexityN(nodes);
}
BENCHMARK(BM_construct)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Arg(128)
    ->Complexity(benchmark::oNSquared)->Unit(benchmark::kMillisecond);

void BM_matvec(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  tss::TssMatrix t = tss::construct_tss(make_instance(nodes, 2, 11));
  tss::GaussianSource rng(3);
  const Eigen::VectorXd x = rng.vector(t.layout().total_cols());
  for (auto _ : state) {
    Eigen::VectorXd b = tss::matvec(t, x);
    benchmark::DoNotOptimize(b.data());
  }
  state.SetComplexityN(nodes);
}
BENCHMARK(BM_matvec)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Arg(1024)
    ->Complexity(benchmark::oN)->Unit(benchmark::kMicrosecond);

void BM_solve(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  tss::TssMatrix t = tss::construct_tss(make_instance(nodes, 2, 13));
  tss::GaussianSource rng(5);
  const Eigen::VectorXd b = rng.vector(t.layout().total_rows());
  for (auto _ : state) {
    tss::LiftedSolution sol = tss::solve_lifted(tss::assemble_lifted(t, b));
    benchmark::DoNotOptimize(sol.x.data());
  }
  state.SetComplexityN(nodes);
}
BENCHMARK(BM_solve)->Arg(16)->Arg(32)->Arg(64)->Arg(128)
    ->Complexity(benchmark::oN)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
