#pragma once

#include <Eigen/Dense>
#include <map>

#include "tss/graph_matrix.hpp"
#include "tss/lowrank.hpp"
#include "tss/tss_matrix.hpp"

namespace tss {

// Intermediate factors of the nested construction, keyed by directed edge.
// stacked_factor[e] * coupling[e] equals unit_hankel(e) up to the truncation
// tolerance, with rows and columns in canonical ascending node order.
struct ConstructionTrace {
  std::map<DirectedEdge, Eigen::MatrixXd> stacked_factor;
  std::map<DirectedEdge, Eigen::MatrixXd> coupling;
};

// Build a TSS representation of a dense graph-partitioned matrix by two
// sweeps over the tree. Each edge factorization reuses the factors of the
// edges feeding into it, so the full Hankel block of an edge is never formed;
// the resulting edge ranks are the numerical ranks of the unit Hankel
// blocks, with singular values measured against tol times the Frobenius
// norm of the whole matrix.
TssMatrix construct_tss(const GraphPartitionedMatrix& t,
                        double tol = kDefaultTolerance,
                        ConstructionTrace* trace = nullptr);

// Rank of every unit Hankel block, measured directly on the dense matrix
// with the same truncation rule as construct_tss. Independent code path;
// serves as its reference.
RankProfile hankel_rank_profile(const GraphPartitionedMatrix& t,
                                double tol = kDefaultTolerance);

}  // namespace tss
