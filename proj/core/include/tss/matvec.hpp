#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>

#include "tss/tss_matrix.hpp"

namespace tss {

// State vector per directed edge, produced while multiplying. The state on
// edge (i, j) collects everything flowing from the side of i over to j.
using EdgeStates = std::map<DirectedEdge, Eigen::VectorXd>;

// b = T x by one sweep toward the root and one away from it; linear in the
// node count for bounded ranks and block sizes. Zero-rank edges carry empty
// states.
Eigen::VectorXd matvec(const TssMatrix& t, const Eigen::VectorXd& x,
                       EdgeStates* states = nullptr);

// Exact multiply-add count of matvec, computed from dimensions alone.
std::int64_t matvec_opcount(const TssMatrix& t);

}  // namespace tss
