#pragma once

#include <Eigen/Dense>

#include "tss/errors.hpp"

namespace tss {

inline constexpr double kDefaultTolerance = 1e-12;

// F = left * right with left of full column rank `rank` and right of full row
// rank. rank 0 yields valid empty factors.
struct LowRankFactors {
  Eigen::MatrixXd left;   // p x rank
  Eigen::MatrixXd right;  // rank x q
  int rank = 0;
};

// Rank-revealing factorization via SVD. Singular values strictly above
// tol * scale are kept, where scale defaults to sigma_max of f itself.
// Passing the norm of an enclosing matrix as `scale` makes ranks of its
// submatrices comparable: a block at round-off level relative to the whole
// matrix then truncates to rank zero instead of reading as full rank.
// tol == 0 falls back to the machine-precision threshold
// max(p, q) * eps * scale. The left factor has orthonormal columns.
LowRankFactors rank_reveal(const Eigen::MatrixXd& f,
                           double tol = kDefaultTolerance, double scale = 0.0);

// Rank alone, same truncation rule.
int numerical_rank(const Eigen::MatrixXd& f, double tol = kDefaultTolerance,
                   double scale = 0.0);

}  // namespace tss
