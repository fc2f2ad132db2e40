#include "tss/algebra.hpp"

#include <random>

#include "tss/lowrank.hpp"

namespace tss {

namespace {

void require_same_tree(const TssMatrix& a, const TssMatrix& b) {
  if (!(a.tree() == b.tree()))
    throw LayoutMismatch("operands live on different trees");
}

}  // namespace

TssMatrix add(const TssMatrix& a, const TssMatrix& b, double tol) {
  require_same_tree(a, b);
  if (!(a.layout() == b.layout()))
    throw LayoutMismatch("operands have different block layouts");
  Eigen::MatrixXd sum = a.to_dense().values() + b.to_dense().values();
  return construct_tss(
      GraphPartitionedMatrix(a.tree(), a.layout(), std::move(sum)), tol);
}

TssMatrix multiply(const TssMatrix& a, const TssMatrix& b, double tol) {
  require_same_tree(a, b);
  const int node_count = a.tree().node_count();
  std::vector<int> rows(node_count), cols(node_count);
  for (NodeId k = 1; k <= node_count; ++k) {
    if (a.layout().block_cols(k) != b.layout().block_rows(k))
      throw LayoutMismatch("inner block sizes differ at node " +
                           std::to_string(k));
    rows[k - 1] = a.layout().block_rows(k);
    cols[k - 1] = b.layout().block_cols(k);
  }
  Eigen::MatrixXd prod = a.to_dense().values() * b.to_dense().values();
  return construct_tss(
      GraphPartitionedMatrix(a.tree(), BlockLayout(rows, cols), std::move(prod)),
      tol);
}

TssMatrix inverse(const TssMatrix& a, double tol) {
  const Eigen::MatrixXd dense = a.to_dense().values();
  if (dense.rows() != dense.cols()) throw NotSquare(dense.rows(), dense.cols());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(dense);
  if (dense.rows() > 0 && !lu.isInvertible())
    throw SingularMatrix("inverse: matrix is singular");
  return construct_tss(GraphPartitionedMatrix(
                           a.tree(), a.layout().transposed(), lu.inverse()),
                       tol);
}

GirsReport verify_girs(const GraphPartitionedMatrix& t, double c,
                       long long samples, std::uint64_t seed, double tol) {
  const RootedTree& tree = t.tree();
  const int node_count = tree.node_count();
  const double scale = t.values().norm();
  GirsReport report;
  report.constant = c;

  auto check_subset = [&](const std::vector<NodeId>& subset) {
    const int border = border_edge_count(tree, subset);
    const int rank = numerical_rank(t.hankel_block(subset), tol, scale);
    report.max_ratio =
        std::max(report.max_ratio, static_cast<double>(rank) / border);
    if (static_cast<double>(rank) > c * border + 1e-9) ++report.violations;
    ++report.subsets_checked;
  };

  if (node_count <= 10) {
    report.exhaustive = true;
    for (std::uint64_t mask = 1; mask + 1 < (1ull << node_count); ++mask) {
      std::vector<NodeId> subset;
      for (int bit = 0; bit < node_count; ++bit)
        if (mask >> bit & 1) subset.push_back(bit + 1);
      check_subset(subset);
    }
    return report;
  }

  for (const DirectedEdge& e : tree.directed_edges())
    check_subset(t.unit_hankel_subset(e));

  std::mt19937_64 rng(seed);
  long long accepted = 0;
  while (accepted < samples) {
    std::vector<NodeId> subset;
    for (NodeId k = 1; k <= node_count; ++k)
      if (rng() & 1) subset.push_back(k);
    if (subset.empty() || static_cast<int>(subset.size()) == node_count)
      continue;
    check_subset(subset);
    ++accepted;
  }
  return report;
}

}  // namespace tss
