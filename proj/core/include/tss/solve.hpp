#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tss/matvec.hpp"
#include "tss/tss_matrix.hpp"

namespace tss {

// Sparse block system on the tree whose solution stacks x together with all
// matvec states. The unknown group of node j is
//   theta_j = [x_j; g_(i,j) for neighbors i ascending]
// and the equation group of node j stacks the output equation
//   D_j x_j + sum_i Out_i g_(i,j) = b_j
// over one state equation per outgoing edge,
//   g_(j,i) - Inp_i x_j - sum_{w != i} Trans_{i,w} g_(w,j) = 0,
// the identity hitting g_(j,i) inside theta_i. Off-diagonal blocks exist
// only for tree edges, so the block sparsity pattern is the tree itself.
class LiftedSystem {
public:
  LiftedSystem(const TssMatrix& t, const Eigen::VectorXd& b);

  const RootedTree& tree() const { return tree_; }
  int group_rows(NodeId i) const { return group_rows_[i - 1]; }
  int group_cols(NodeId i) const { return group_cols_[i - 1]; }
  int total_rows() const;
  int total_cols() const;

  bool has_block(NodeId i, NodeId j) const;
  const Eigen::MatrixXd& block(NodeId i, NodeId j) const;
  const Eigen::VectorXd& rhs(NodeId i) const { return rhs_[i - 1]; }

  // Offset of the state g_(from,j) inside theta_j.
  int state_offset(NodeId j, NodeId from) const;

  Eigen::MatrixXd to_dense() const;
  Eigen::VectorXd dense_rhs() const;

  struct Unpacked {
    Eigen::VectorXd x;
    EdgeStates states;
  };
  // Split per-node solution groups back into x and edge states.
  Unpacked unpack(const std::vector<Eigen::VectorXd>& theta) const;

  const std::map<std::pair<NodeId, NodeId>, Eigen::MatrixXd>& blocks() const {
    return blocks_;
  }
  const std::vector<Eigen::VectorXd>& rhs_groups() const { return rhs_; }

private:
  RootedTree tree_;
  BlockLayout layout_;
  RankProfile profile_;
  std::map<std::pair<NodeId, NodeId>, Eigen::MatrixXd> blocks_;
  std::vector<Eigen::VectorXd> rhs_;
  std::vector<int> group_rows_, group_cols_;
};

LiftedSystem assemble_lifted(const TssMatrix& t, const Eigen::VectorXd& b);

struct LiftedSolveStats {
  // Off-pattern blocks created during elimination; zero when the order
  // follows the tree leaves-to-root.
  int fill_blocks = 0;
  std::int64_t multiply_adds = 0;
};

struct LiftedSolution {
  Eigen::VectorXd x;
  EdgeStates states;
};

// Block Gaussian elimination leaves-to-root with pivoting confined to each
// node's group, then back-substitution root-to-leaves. Throws
// SingularPivotBlock when a pivot group is non-square or singular.
LiftedSolution solve_lifted(const LiftedSystem& sys,
                            LiftedSolveStats* stats = nullptr);

Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

// Solve T x = b through the lifted system, falling back to a dense solve of
// the materialized matrix when block-confined pivoting fails.
Eigen::VectorXd solve(const TssMatrix& t, const Eigen::VectorXd& b);

}  // namespace tss
