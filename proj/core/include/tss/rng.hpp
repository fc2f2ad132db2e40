#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace tss {

// Deterministic stream of standard normals. Matrices are filled row by row
// so a given seed always produces the same values.
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double operator()() { return normal_(engine_); }

  Eigen::MatrixXd matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = normal_(engine_);
    return out;
  }

  Eigen::VectorXd vector(Eigen::Index n) {
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = normal_(engine_);
    return out;
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace tss
