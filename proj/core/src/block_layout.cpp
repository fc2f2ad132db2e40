#include "tss/block_layout.hpp"

namespace tss {

BlockLayout::BlockLayout(std::vector<int> row_sizes, std::vector<int> col_sizes) {
  if (row_sizes.empty() || row_sizes.size() != col_sizes.size())
    throw LengthMismatch("block size vectors", static_cast<long>(row_sizes.size()),
                         static_cast<long>(col_sizes.size()));
  for (int s : row_sizes)
    if (s < 0) throw Error("negative block row size");
  for (int s : col_sizes)
    if (s < 0) throw Error("negative block column size");

  int k = static_cast<int>(row_sizes.size());
  row_size_.assign(k + 1, 0);
  col_size_.assign(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    row_size_[i] = row_sizes[i - 1];
    col_size_[i] = col_sizes[i - 1];
  }
  row_offset_.assign(k + 2, 0);
  col_offset_.assign(k + 2, 0);
  for (int i = 1; i <= k + 1; ++i) {
    row_offset_[i] = row_offset_[i - 1] + row_size_[i - 1];
    col_offset_[i] = col_offset_[i - 1] + col_size_[i - 1];
  }
}

BlockLayout BlockLayout::uniform(int node_count, int rows_per_node,
                                 int cols_per_node) {
  return BlockLayout(std::vector<int>(node_count, rows_per_node),
                     std::vector<int>(node_count, cols_per_node));
}

void BlockLayout::check_node(NodeId i) const {
  if (i < 1 || i > node_count()) throw BadNodeId(i, node_count());
}

int BlockLayout::block_rows(NodeId i) const {
  check_node(i);
  return row_size_[i];
}

int BlockLayout::block_cols(NodeId i) const {
  check_node(i);
  return col_size_[i];
}

int BlockLayout::row_offset(NodeId i) const {
  check_node(i);
  return row_offset_[i];
}

int BlockLayout::col_offset(NodeId i) const {
  check_node(i);
  return col_offset_[i];
}

BlockLayout BlockLayout::transposed() const {
  std::vector<int> rows(col_size_.begin() + 1, col_size_.end());
  std::vector<int> cols(row_size_.begin() + 1, row_size_.end());
  return BlockLayout(std::move(rows), std::move(cols));
}

}  // namespace tss
