#pragma once

#include <Eigen/Dense>
#include <span>

#include "tss/block_layout.hpp"
#include "tss/tree.hpp"

namespace tss {

// A dense matrix whose rows and columns are partitioned into blocks indexed
// by the nodes of a tree. block(i, j) is the (i, j) block of the partition.
class GraphPartitionedMatrix {
public:
  GraphPartitionedMatrix(RootedTree tree, BlockLayout layout,
                         Eigen::MatrixXd values);

  const RootedTree& tree() const { return tree_; }
  const BlockLayout& layout() const { return layout_; }
  const Eigen::MatrixXd& values() const { return values_; }

  Eigen::MatrixXd block(NodeId i, NodeId j) const;

  // Rows from `row_nodes` blocks, columns from `col_nodes` blocks, keeping
  // the order given.
  Eigen::MatrixXd submatrix(std::span<const NodeId> row_nodes,
                            std::span<const NodeId> col_nodes) const;

  // Hankel block induced by a node subset A: rows over the complement of A
  // (ascending), columns over A (ascending). A must be a nonempty proper
  // subset.
  Eigen::MatrixXd hankel_block(std::span<const NodeId> subset) const;

  // Hankel block of a directed tree edge. For an edge (i, parent(i)) the
  // inducing subset is descendants(i); for (parent(i), i) it is the
  // complement of descendants(i).
  Eigen::MatrixXd unit_hankel(const DirectedEdge& e) const;
  std::vector<NodeId> unit_hankel_subset(const DirectedEdge& e) const;

private:
  RootedTree tree_;
  BlockLayout layout_;
  Eigen::MatrixXd values_;
};

// Number of tree edges with exactly one endpoint in `subset`.
int border_edge_count(const RootedTree& tree, std::span<const NodeId> subset);

}  // namespace tss
