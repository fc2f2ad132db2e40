#include "tss/solve.hpp"

#include <random>

#include "doctest.h"
#include "oracle_utils.hpp"
#include "tss/construct.hpp"
#include "tss/generate.hpp"
#include "tss/matvec.hpp"
#include "tss/rng.hpp"

using tss::BlockLayout;
using tss::DirectedEdge;
using tss::GraphPartitionedMatrix;
using tss::RankProfile;
using tss::RootedTree;
using tss::SpinnerTable;
using tss::TssMatrix;

namespace {

// Two scalar nodes with Out^1_2 = 0: the node 1 pivot group of the lifted
// system is singular even though the assembled matrix is invertible.
TssMatrix zero_output_pair() {
  RootedTree tree = tss::line_tree(2);
  BlockLayout layout = BlockLayout::uniform(2, 1, 1);
  RankProfile profile(tree, 1);
  std::vector<SpinnerTable> spinners(2);
  spinners[0].diag = Eigen::MatrixXd::Constant(1, 1, 2.0);
  spinners[0].inp[2] = Eigen::MatrixXd::Constant(1, 1, 5.0);
  spinners[0].out[2] = Eigen::MatrixXd::Zero(1, 1);
  spinners[1].diag = Eigen::MatrixXd::Constant(1, 1, 3.0);
  spinners[1].inp[1] = Eigen::MatrixXd::Constant(1, 1, 7.0);
  spinners[1].out[1] = Eigen::MatrixXd::Constant(1, 1, 11.0);
  return TssMatrix(tree, layout, profile, std::move(spinners));
}

TssMatrix shifted_random_system(int k, int block, int rank, unsigned seed) {
  std::mt19937_64 rng(seed);
  RootedTree tree = oracle::random_prufer_tree(k, rng);
  BlockLayout layout = BlockLayout::uniform(k, block, block);
  RankProfile profile(tree, std::min(rank, block));
  Eigen::MatrixXd values =
      tss::random_tss(tree, layout, profile, rng()).to_dense().values();
  values.diagonal().array() += 4.0 * values.cwiseAbs().rowwise().sum().maxCoeff();
  return tss::construct_tss(GraphPartitionedMatrix(tree, layout, values));
}

}  // namespace

TEST_SUITE("solve") {

TEST_CASE("lifted system of a scalar pair has the expected pattern") {
  RootedTree tree = tss::line_tree(2);
  BlockLayout layout = BlockLayout::uniform(2, 1, 1);
  RankProfile profile(tree, 1);
  TssMatrix t = tss::random_tss(tree, layout, profile, 17);
  Eigen::VectorXd b(2);
  b << 1.0, -4.0;

  tss::LiftedSystem sys = tss::assemble_lifted(t, b);
  const double d1 = t.diag_block(1)(0, 0), d2 = t.diag_block(2)(0, 0);
  const double b12 = t.inp(1, 2)(0, 0), b21 = t.inp(2, 1)(0, 0);
  const double c12 = t.out(1, 2)(0, 0), c21 = t.out(2, 1)(0, 0);
  Eigen::MatrixXd expected(4, 4);
  expected << d1, c12, 0, 0,
             -b12, 0, 0, 1,
              0, 0, d2, c21,
              0, 1, -b21, 0;
  CHECK((sys.to_dense() - expected).norm() == 0.0);
  Eigen::VectorXd rhs(4);
  rhs << 1.0, 0.0, -4.0, 0.0;
  CHECK((sys.dense_rhs() - rhs).norm() == 0.0);

  // Eliminating the unknowns by hand gives back the original equations.
  const Eigen::VectorXd theta =
      Eigen::FullPivLU<Eigen::MatrixXd>(sys.to_dense()).solve(rhs);
  const Eigen::VectorXd x = tss::dense_solve(t.to_dense().values(), b);
  CHECK(std::abs(theta(0) - x(0)) <= 1e-12);
  CHECK(std::abs(theta(2) - x(1)) <= 1e-12);
}

TEST_CASE("lifted solve matches the dense solve") {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    TssMatrix t = shifted_random_system(3 + static_cast<int>(seed % 9), 2, 2,
                                        1000 + seed);
    tss::GaussianSource bs(seed);
    const Eigen::VectorXd b = bs.vector(t.layout().total_rows());

    tss::LiftedSolveStats stats;
    tss::LiftedSolution sol = tss::solve_lifted(tss::assemble_lifted(t, b), &stats);
    const Eigen::MatrixXd dense = t.to_dense().values();
    const Eigen::VectorXd reference = tss::dense_solve(dense, b);

    CHECK((dense * sol.x - b).norm() <= 1e-8 * (1.0 + b.norm()));
    CHECK((sol.x - reference).norm() <= 1e-8 * (1.0 + reference.norm()));
    CHECK(stats.fill_blocks == 0);
  }
}

TEST_CASE("solution states agree with a forward pass") {
  TssMatrix t = shifted_random_system(9, 3, 2, 4242);
  tss::GaussianSource bs(5);
  const Eigen::VectorXd b = bs.vector(t.layout().total_rows());
  tss::LiftedSolution sol = tss::solve_lifted(tss::assemble_lifted(t, b));

  tss::EdgeStates forward;
  tss::matvec(t, sol.x, &forward);
  REQUIRE(forward.size() == sol.states.size());
  for (const auto& [e, g] : forward)
    CHECK((sol.states.at(e) - g).norm() <= 1e-8 * (1.0 + g.norm()));
}

TEST_CASE("elimination cost grows linearly along a line") {
  auto cost = [](int k) {
    RootedTree tree = tss::line_tree(k);
    BlockLayout layout = BlockLayout::uniform(k, 2, 2);
    TssMatrix t = tss::construct_tss(tss::tree_sparse_matrix(tree, layout, 3));
    tss::GaussianSource bs(6);
    tss::LiftedSolveStats stats;
    tss::solve_lifted(tss::assemble_lifted(t, bs.vector(2 * k)), &stats);
    CHECK(stats.fill_blocks == 0);
    return stats.multiply_adds;
  };
  const double ratio =
      static_cast<double>(cost(64)) / static_cast<double>(cost(32));
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}

TEST_CASE("singular pivot group is reported and the fallback recovers") {
  TssMatrix t = zero_output_pair();
  const Eigen::MatrixXd dense = t.to_dense().values();
  Eigen::MatrixXd expected(2, 2);
  expected << 2.0, 0.0, 11.0 * 5.0, 3.0;
  REQUIRE((dense - expected).norm() == 0.0);

  Eigen::VectorXd b(2);
  b << 4.0, 1.0;
  CHECK_THROWS_AS(tss::solve_lifted(tss::assemble_lifted(t, b)),
                  tss::SingularPivotBlock);

  const Eigen::VectorXd x = tss::solve(t, b);
  CHECK((dense * x - b).norm() <= 1e-12);
}

TEST_CASE("rectangular pivot groups are rejected by the lifted path") {
  RootedTree tree = tss::line_tree(2);
  BlockLayout layout({1, 2}, {2, 1});
  RankProfile profile(tree, 1);
  TssMatrix t = tss::random_tss(tree, layout, profile, 23);
  REQUIRE(t.layout().total_rows() == t.layout().total_cols());

  Eigen::VectorXd b(3);
  b << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(tss::solve_lifted(tss::assemble_lifted(t, b)),
                  tss::SingularPivotBlock);
  const Eigen::VectorXd x = tss::solve(t, b);
  CHECK((t.to_dense().values() * x - b).norm() <= 1e-10 * (1.0 + b.norm()));
}

TEST_CASE("dense solve input validation") {
  CHECK_THROWS_AS(
      tss::dense_solve(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2)),
      tss::SingularMatrix);
  CHECK_THROWS_AS(
      tss::dense_solve(Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(2)),
      tss::NotSquare);
  CHECK_THROWS_AS(tss::dense_solve(Eigen::MatrixXd::Identity(2, 2),
                                   Eigen::VectorXd::Zero(3)),
                  tss::LengthMismatch);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(tss::dense_solve(bad, Eigen::VectorXd::Zero(2)),
                  tss::NonFiniteInput);
}

TEST_CASE("solve validates the right hand side length") {
  TssMatrix t = shifted_random_system(4, 2, 1, 9);
  CHECK_THROWS_AS(tss::solve(t, Eigen::VectorXd::Zero(3)),
                  tss::LengthMismatch);
}

}  // TEST_SUITE
