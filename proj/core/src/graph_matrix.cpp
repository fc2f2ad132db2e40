#include "tss/graph_matrix.hpp"

#include <algorithm>
#include <string>

namespace tss {

GraphPartitionedMatrix::GraphPartitionedMatrix(RootedTree tree,
                                               BlockLayout layout,
                                               Eigen::MatrixXd values)
    : tree_(std::move(tree)), layout_(std::move(layout)),
      values_(std::move(values)) {
  if (layout_.node_count() != tree_.node_count())
    throw LayoutMismatch("layout covers " + std::to_string(layout_.node_count()) +
                         " nodes, tree has " + std::to_string(tree_.node_count()));
  if (values_.rows() != layout_.total_rows() ||
      values_.cols() != layout_.total_cols())
    throw ShapeMismatch("matrix values",
                        std::to_string(layout_.total_rows()) + "x" +
                            std::to_string(layout_.total_cols()),
                        std::to_string(values_.rows()) + "x" +
                            std::to_string(values_.cols()));
}

Eigen::MatrixXd GraphPartitionedMatrix::block(NodeId i, NodeId j) const {
  return values_.block(layout_.row_offset(i), layout_.col_offset(j),
                       layout_.block_rows(i), layout_.block_cols(j));
}

Eigen::MatrixXd GraphPartitionedMatrix::submatrix(
    std::span<const NodeId> row_nodes, std::span<const NodeId> col_nodes) const {
  int rows = 0, cols = 0;
  for (NodeId i : row_nodes) rows += layout_.block_rows(i);
  for (NodeId j : col_nodes) cols += layout_.block_cols(j);
  Eigen::MatrixXd out(rows, cols);
  int r = 0;
  for (NodeId i : row_nodes) {
    int c = 0;
    for (NodeId j : col_nodes) {
      out.block(r, c, layout_.block_rows(i), layout_.block_cols(j)) = block(i, j);
      c += layout_.block_cols(j);
    }
    r += layout_.block_rows(i);
  }
  return out;
}

Eigen::MatrixXd GraphPartitionedMatrix::hankel_block(
    std::span<const NodeId> subset) const {
  std::vector<NodeId> cols(subset.begin(), subset.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  std::vector<NodeId> rows = complement(tree_, cols);
  if (cols.empty() || rows.empty())
    throw EmptyOrFullSubset("hankel block needs a nonempty proper node subset");
  return submatrix(rows, cols);
}

std::vector<NodeId> GraphPartitionedMatrix::unit_hankel_subset(
    const DirectedEdge& e) const {
  if (!tree_.has_edge(e.from, e.to)) throw NotATreeEdge(e.from, e.to);
  if (tree_.parent(e.from) == e.to) return tree_.descendants(e.from);
  return complement(tree_, tree_.descendants(e.to));
}

Eigen::MatrixXd GraphPartitionedMatrix::unit_hankel(const DirectedEdge& e) const {
  return hankel_block(unit_hankel_subset(e));
}

int border_edge_count(const RootedTree& tree, std::span<const NodeId> subset) {
  std::vector<bool> in_subset(tree.node_count() + 1, false);
  for (NodeId i : subset) {
    tree.check_node(i);
    in_subset[i] = true;
  }
  int count = 0;
  for (auto [child, parent] : tree.undirected_edges())
    if (in_subset[child] != in_subset[parent]) ++count;
  return count;
}

}  // namespace tss
