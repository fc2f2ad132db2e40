#include "tss/algebra.hpp"

#include <random>

#include "doctest.h"
#include "oracle_utils.hpp"
#include "tss/construct.hpp"
#include "tss/generate.hpp"
#include "tss/rng.hpp"

using tss::BlockLayout;
using tss::DirectedEdge;
using tss::GraphPartitionedMatrix;
using tss::RankProfile;
using tss::RootedTree;
using tss::TssMatrix;

namespace {

TssMatrix random_instance(const RootedTree& tree, const BlockLayout& layout,
                          int max_rank, std::mt19937_64& rng) {
  RankProfile profile(tree, 0);
  for (const DirectedEdge& e : tree.directed_edges())
    profile.set(e, static_cast<int>(rng() % (max_rank + 1)));
  Eigen::MatrixXd values =
      tss::random_tss(tree, layout, profile, rng()).to_dense().values();
  return tss::construct_tss(
      GraphPartitionedMatrix(tree, layout, values));
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("sum ranks are bounded by the sum of the operand ranks") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 8);
    RootedTree tree = oracle::random_prufer_tree(k, rng);
    BlockLayout layout(oracle::random_sizes(k, 1, 3, rng),
                       oracle::random_sizes(k, 1, 3, rng));
    TssMatrix a = random_instance(tree, layout, 2, rng);
    TssMatrix b = random_instance(tree, layout, 2, rng);

    TssMatrix s = tss::add(a, b);
    CHECK(oracle::rel_error(
              s.to_dense().values(),
              a.to_dense().values() + b.to_dense().values()) <= 1e-10);
    for (const DirectedEdge& e : tree.directed_edges())
      CHECK(s.profile().at(e) <= a.profile().at(e) + b.profile().at(e));
  }
}

TEST_CASE("adding the negation collapses to a block diagonal") {
  std::mt19937_64 rng(62);
  RootedTree tree = oracle::two_star_tree();
  BlockLayout layout = BlockLayout::uniform(7, 2, 2);
  TssMatrix a = random_instance(tree, layout, 2, rng);

  Eigen::MatrixXd negated = -a.to_dense().values();
  negated.diagonal().array() += 1.0;
  TssMatrix b =
      tss::construct_tss(GraphPartitionedMatrix(tree, layout, negated));
  TssMatrix s = tss::add(a, b);
  CHECK(s.profile().max_rank() == 0);
}

TEST_CASE("product ranks are bounded by the sum of the operand ranks") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 8);
    RootedTree tree = oracle::random_prufer_tree(k, rng);
    std::vector<int> ma = oracle::random_sizes(k, 1, 3, rng);
    std::vector<int> shared = oracle::random_sizes(k, 1, 3, rng);
    std::vector<int> nb = oracle::random_sizes(k, 1, 3, rng);
    TssMatrix a = random_instance(tree, BlockLayout(ma, shared), 2, rng);
    TssMatrix b = random_instance(tree, BlockLayout(shared, nb), 2, rng);

    TssMatrix p = tss::multiply(a, b);
    CHECK(oracle::rel_error(
              p.to_dense().values(),
              a.to_dense().values() * b.to_dense().values()) <= 1e-9);
    CHECK(p.layout().block_rows(1) == ma[0]);
    CHECK(p.layout().block_cols(1) == nb[0]);
    for (const DirectedEdge& e : tree.directed_edges())
      CHECK(p.profile().at(e) <= a.profile().at(e) + b.profile().at(e));
  }
}

TEST_CASE("multiplying by the identity preserves the matrix") {
  std::mt19937_64 rng(64);
  RootedTree tree = tss::line_tree(5);
  BlockLayout layout = BlockLayout::uniform(5, 2, 2);
  TssMatrix a = random_instance(tree, layout, 2, rng);
  TssMatrix id = tss::identity_tss(tree, layout);
  CHECK(oracle::rel_error(tss::multiply(a, id).to_dense().values(),
                          a.to_dense().values()) <= 1e-10);
  CHECK(oracle::rel_error(tss::multiply(id, a).to_dense().values(),
                          a.to_dense().values()) <= 1e-10);
}

TEST_CASE("inverse preserves the rank profile and transposes the layout") {
  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 8);
    RootedTree tree = oracle::random_prufer_tree(k, rng);
    const int s = 1 + static_cast<int>(rng() % 3);
    BlockLayout layout = BlockLayout::uniform(k, s, s);
    RankProfile profile(tree, 0);
    for (const DirectedEdge& e : tree.directed_edges())
      profile.set(e, static_cast<int>(rng() % (s + 1)));
    Eigen::MatrixXd values =
        tss::random_tss(tree, layout, profile, rng()).to_dense().values();
    values.diagonal().array() +=
        4.0 * values.cwiseAbs().rowwise().sum().maxCoeff();
    TssMatrix a =
        tss::construct_tss(GraphPartitionedMatrix(tree, layout, values));

    TssMatrix inv = tss::inverse(a);
    CHECK(oracle::rel_error(inv.to_dense().values(),
                            values.inverse()) <= 1e-8);
    for (const DirectedEdge& e : tree.directed_edges())
      CHECK(inv.profile().at(e) == a.profile().at(e));
  }

  // rectangular diagonal blocks transpose in the inverse layout
  RootedTree pair = tss::line_tree(2);
  BlockLayout rect({1, 2}, {2, 1});
  Eigen::MatrixXd v(3, 3);
  v << 5, 1, 0,
       0, 6, 1,
       1, 0, 7;
  TssMatrix a = tss::construct_tss(GraphPartitionedMatrix(pair, rect, v));
  TssMatrix inv = tss::inverse(a);
  CHECK(inv.layout().block_rows(1) == 2);
  CHECK(inv.layout().block_cols(1) == 1);
  CHECK(oracle::rel_error(inv.to_dense().values(), v.inverse()) <= 1e-10);
}

TEST_CASE("algebra input validation") {
  RootedTree t3 = tss::line_tree(3);
  RootedTree s3 = RootedTree(3, {{1, 3}, {2, 3}}, 3);
  BlockLayout l = BlockLayout::uniform(3, 1, 1);
  std::mt19937_64 rng(66);
  TssMatrix a = random_instance(t3, l, 1, rng);
  TssMatrix b = random_instance(s3, l, 1, rng);
  CHECK_THROWS_AS(tss::add(a, b), tss::LayoutMismatch);
  CHECK_THROWS_AS(tss::multiply(a, b), tss::LayoutMismatch);

  TssMatrix c = random_instance(t3, BlockLayout({1, 1, 1}, {1, 2, 1}), 1, rng);
  CHECK_THROWS_AS(tss::add(a, c), tss::LayoutMismatch);
  CHECK_THROWS_AS(tss::inverse(c), tss::NotSquare);

  TssMatrix zero = tss::construct_tss(GraphPartitionedMatrix(
      t3, l, Eigen::MatrixXd::Zero(3, 3)));
  CHECK_THROWS_AS(tss::inverse(zero), tss::SingularMatrix);
}

TEST_CASE("low rank off diagonal structure is detected exhaustively") {
  RootedTree tree = oracle::two_star_tree();
  BlockLayout layout = BlockLayout::uniform(7, 1, 1);
  RankProfile profile(tree, 1);
  Eigen::MatrixXd values =
      tss::random_tss(tree, layout, profile, 71).to_dense().values();
  GraphPartitionedMatrix g(tree, layout, values);

  tss::GirsReport report = tss::verify_girs(g, 1.0, 0, 1);
  CHECK(report.exhaustive);
  CHECK(report.subsets_checked == 126);  // 2^7 - 2
  CHECK(report.violations == 0);
  CHECK(report.max_ratio <= 1.0);
  CHECK(report.max_ratio > 0.0);
}

TEST_CASE("identity has zero offdiagonal ranks everywhere") {
  RootedTree tree = tss::line_tree(6);
  BlockLayout layout = BlockLayout::uniform(6, 2, 2);
  TssMatrix id = tss::identity_tss(tree, layout);
  tss::GirsReport report = tss::verify_girs(id.to_dense(), 1.0, 0, 1);
  CHECK(report.exhaustive);
  CHECK(report.violations == 0);
  CHECK(report.max_ratio == 0.0);
}

TEST_CASE("sampled verification covers hankel subsets plus random draws") {
  RootedTree tree = tss::line_tree(12);
  BlockLayout layout = BlockLayout::uniform(12, 1, 1);
  RankProfile profile(tree, 1);
  GraphPartitionedMatrix g =
      tss::random_tss(tree, layout, profile, 72).to_dense();

  tss::GirsReport report = tss::verify_girs(g, 1.0, 50, 7);
  CHECK_FALSE(report.exhaustive);
  CHECK(report.subsets_checked == 50 + 22);
  CHECK(report.violations == 0);
}

TEST_CASE("a dense unstructured matrix violates a small constant") {
  tss::GaussianSource rng(9);
  RootedTree tree = tss::line_tree(8);
  BlockLayout layout = BlockLayout::uniform(8, 1, 1);
  GraphPartitionedMatrix g(tree, layout, rng.matrix(8, 8));
  tss::GirsReport report = tss::verify_girs(g, 1.0, 0, 1);
  CHECK(report.violations > 0);
  CHECK(report.max_ratio > 1.0);
}

}  // TEST_SUITE
