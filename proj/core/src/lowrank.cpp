#include "tss/lowrank.hpp"

#include <Eigen/SVD>
#include <limits>

namespace tss {

namespace {

int truncation_rank(const Eigen::VectorXd& sv, Eigen::Index p, Eigen::Index q,
                    double tol, double scale) {
  if (sv.size() == 0) return 0;
  if (scale <= 0.0) scale = sv(0);
  if (scale == 0.0) return 0;
  double threshold =
      tol > 0.0
          ? tol * scale
          : static_cast<double>(std::max(p, q)) *
                std::numeric_limits<double>::epsilon() * scale;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > threshold) ++rank;
  return rank;
}

}  // namespace

LowRankFactors rank_reveal(const Eigen::MatrixXd& f, double tol, double scale) {
  if (!f.allFinite()) throw NonFiniteInput("rank_reveal: non-finite entries");
  const Eigen::Index p = f.rows(), q = f.cols();
  if (p == 0 || q == 0)
    return {Eigen::MatrixXd(p, 0), Eigen::MatrixXd(0, q), 0};

  // Jacobi is more accurate on small blocks, BDC scales to larger ones.
  Eigen::MatrixXd u, v;
  Eigen::VectorXd sv;
  if (std::min(p, q) <= 16) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(f, Eigen::ComputeThinU |
                                                 Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    sv = svd.singularValues();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(f, Eigen::ComputeThinU |
                                              Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    sv = svd.singularValues();
  }

  int rank = truncation_rank(sv, p, q, tol, scale);
  LowRankFactors out;
  out.left = u.leftCols(rank);
  out.right = sv.head(rank).asDiagonal() * v.leftCols(rank).transpose();
  out.rank = rank;
  return out;
}

int numerical_rank(const Eigen::MatrixXd& f, double tol, double scale) {
  if (!f.allFinite()) throw NonFiniteInput("numerical_rank: non-finite entries");
  const Eigen::Index p = f.rows(), q = f.cols();
  if (p == 0 || q == 0) return 0;
  if (std::min(p, q) <= 16) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(f);
    return truncation_rank(svd.singularValues(), p, q, tol, scale);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(f);
  return truncation_rank(svd.singularValues(), p, q, tol, scale);
}

}  // namespace tss
