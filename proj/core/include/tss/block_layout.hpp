#pragma once

#include <vector>

#include "tss/tree.hpp"

namespace tss {

// Row/column block sizes per node. Sizes may be zero (empty blocks are legal
// and show up in HSS-style partitions). Entry k of each input vector is the
// size for node k+1.
class BlockLayout {
public:
  BlockLayout(std::vector<int> row_sizes, std::vector<int> col_sizes);
  static BlockLayout uniform(int node_count, int rows_per_node,
                             int cols_per_node);

  int node_count() const { return static_cast<int>(row_size_.size()) - 1; }
  int block_rows(NodeId i) const;
  int block_cols(NodeId i) const;
  int row_offset(NodeId i) const;
  int col_offset(NodeId i) const;
  int total_rows() const { return row_offset_.back(); }
  int total_cols() const { return col_offset_.back(); }

  // Layout of the inverse: row and column sizes swap roles.
  BlockLayout transposed() const;

  friend bool operator==(const BlockLayout&, const BlockLayout&) = default;

private:
  void check_node(NodeId i) const;
  std::vector<int> row_size_, col_size_;    // 1-based, slot 0 unused
  std::vector<int> row_offset_, col_offset_;  // offset_[i] = start of block i
};

}  // namespace tss
