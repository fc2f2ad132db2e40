#include "tss/generate.hpp"

#include <Eigen/Dense>

#include "tss/rng.hpp"
#include "tss/tss_matrix.hpp"

namespace tss {

GraphPartitionedMatrix random_dense_matrix(const RootedTree& tree,
                                           const BlockLayout& layout,
                                           std::uint64_t seed) {
  GaussianSource rng(seed);
  return GraphPartitionedMatrix(
      tree, layout, rng.matrix(layout.total_rows(), layout.total_cols()));
}

GraphPartitionedMatrix tree_sparse_matrix(const RootedTree& tree,
                                          const BlockLayout& layout,
                                          std::uint64_t seed) {
  for (NodeId k = 1; k <= tree.node_count(); ++k)
    if (layout.block_rows(k) != layout.block_cols(k))
      throw NotSquare(layout.block_rows(k), layout.block_cols(k));

  GaussianSource rng(seed);
  Eigen::MatrixXd values =
      Eigen::MatrixXd::Zero(layout.total_rows(), layout.total_cols());
  auto fill_block = [&](NodeId i, NodeId j) {
    values.block(layout.row_offset(i), layout.col_offset(j),
                 layout.block_rows(i), layout.block_cols(j)) =
        rng.matrix(layout.block_rows(i), layout.block_cols(j));
  };
  for (NodeId k = 1; k <= tree.node_count(); ++k) fill_block(k, k);
  for (auto [child, parent] : tree.undirected_edges()) {
    fill_block(child, parent);
    fill_block(parent, child);
  }

  const double shift = 4.0 * values.cwiseAbs().rowwise().sum().maxCoeff();
  values.diagonal().array() += shift;
  return GraphPartitionedMatrix(tree, layout, std::move(values));
}

GraphPartitionedMatrix tree_sparse_inverse_matrix(const RootedTree& tree,
                                                  const BlockLayout& layout,
                                                  std::uint64_t seed) {
  GraphPartitionedMatrix sparse = tree_sparse_matrix(tree, layout, seed);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sparse.values());
  if (sparse.values().rows() > 0 && !lu.isInvertible())
    throw SingularMatrix("tree_sparse_inverse_matrix: singular input");
  return GraphPartitionedMatrix(tree, layout.transposed(), lu.inverse());
}

GraphPartitionedMatrix random_tss_dense_matrix(const RootedTree& tree,
                                               const BlockLayout& layout,
                                               int edge_rank,
                                               std::uint64_t seed) {
  RankProfile profile(tree, edge_rank);
  return random_tss(tree, layout, profile, seed).to_dense();
}

}  // namespace tss
