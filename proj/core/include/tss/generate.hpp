#pragma once

#include <cstdint>

#include "tss/graph_matrix.hpp"

namespace tss {

// Dense matrix with i.i.d. standard normal entries.
GraphPartitionedMatrix random_dense_matrix(const RootedTree& tree,
                                           const BlockLayout& layout,
                                           std::uint64_t seed);

// Zero outside the diagonal blocks and the blocks of tree-adjacent node
// pairs; the diagonal is shifted to make the matrix strictly diagonally
// dominant. Requires square blocks.
GraphPartitionedMatrix tree_sparse_matrix(const RootedTree& tree,
                                          const BlockLayout& layout,
                                          std::uint64_t seed);

// Dense inverse of tree_sparse_matrix for the same seed.
GraphPartitionedMatrix tree_sparse_inverse_matrix(const RootedTree& tree,
                                                  const BlockLayout& layout,
                                                  std::uint64_t seed);

// Dense matrix materialized from a random TSS with the given rank on every
// directed edge.
GraphPartitionedMatrix random_tss_dense_matrix(const RootedTree& tree,
                                               const BlockLayout& layout,
                                               int edge_rank,
                                               std::uint64_t seed);

}  // namespace tss
