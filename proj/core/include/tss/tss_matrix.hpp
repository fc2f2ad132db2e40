#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tss/block_layout.hpp"
#include "tss/graph_matrix.hpp"
#include "tss/rank_profile.hpp"
#include "tss/tree.hpp"

namespace tss {

// Generators attached to one node k of the tree:
//   diag            the diagonal block, block_rows(k) x block_cols(k)
//   inp[j]          feeds x_k into the state on edge (k, j); rho(k,j) x n_k
//   out[i]          maps the state on edge (i, k) into row block k; m_k x rho(i,k)
//   trans[{i, j}]   passes the state arriving from j onward toward i;
//                   rho(k,i) x rho(j,k). No {i, i} entries.
// Keys range over the neighbors of k.
struct SpinnerTable {
  Eigen::MatrixXd diag;
  std::map<NodeId, Eigen::MatrixXd> inp;
  std::map<NodeId, Eigen::MatrixXd> out;
  std::map<std::pair<NodeId, NodeId>, Eigen::MatrixXd> trans;
};

// Tree semi-separable matrix: a dense matrix represented by per-node
// generators. The block (i, j) with i != j is the product of generators
// along the unique tree path from j to i:
//   out at i, then one trans per interior node, then inp at j.
class TssMatrix {
public:
  TssMatrix(RootedTree tree, BlockLayout layout, RankProfile profile,
            std::vector<SpinnerTable> spinners);

  const RootedTree& tree() const { return tree_; }
  const BlockLayout& layout() const { return layout_; }
  const RankProfile& profile() const { return profile_; }

  const SpinnerTable& spinner(NodeId k) const;
  const Eigen::MatrixXd& diag_block(NodeId k) const;
  // Inp at k toward neighbor j.
  const Eigen::MatrixXd& inp(NodeId k, NodeId toward) const;
  // Out at k for the state arriving from neighbor i.
  const Eigen::MatrixXd& out(NodeId k, NodeId from) const;
  // Trans at k routing the state arriving from `from` toward `toward`.
  const Eigen::MatrixXd& trans(NodeId k, NodeId toward, NodeId from) const;

  // Checks every generator slot exists with the shape implied by layout and
  // profile, and that no extra slots are present. Throws ShapeMismatch or
  // MissingGenerator.
  void validate() const;

  // Evaluate one block by multiplying along the path.
  Eigen::MatrixXd block_entry(NodeId i, NodeId j) const;

  // Materialize the full dense matrix.
  GraphPartitionedMatrix to_dense() const;

private:
  RootedTree tree_;
  BlockLayout layout_;
  RankProfile profile_;
  std::vector<SpinnerTable> spinners_;  // slot k-1 holds node k
};

// All generator entries drawn i.i.d. standard normal from `seed`.
TssMatrix random_tss(const RootedTree& tree, const BlockLayout& layout,
                     const RankProfile& profile, std::uint64_t seed);

// Identity matrix as a rank-0 TSS. Requires square diagonal blocks.
TssMatrix identity_tss(const RootedTree& tree, const BlockLayout& layout);

// TSS with the given diagonal blocks and rank-0 off-diagonal part.
TssMatrix block_diagonal_tss(const RootedTree& tree, const BlockLayout& layout,
                             const std::vector<Eigen::MatrixXd>& diag_blocks);

}  // namespace tss
