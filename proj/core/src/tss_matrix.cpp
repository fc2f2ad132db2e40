#include "tss/tss_matrix.hpp"

#include <string>

#include "tss/rng.hpp"

namespace tss {

namespace {

std::string shape_str(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

void check_shape(const Eigen::MatrixXd& m, Eigen::Index rows, Eigen::Index cols,
                 const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw ShapeMismatch(what, shape_str(rows, cols), shape_str(m.rows(), m.cols()));
}

}  // namespace

TssMatrix::TssMatrix(RootedTree tree, BlockLayout layout, RankProfile profile,
                     std::vector<SpinnerTable> spinners)
    : tree_(std::move(tree)), layout_(std::move(layout)),
      profile_(std::move(profile)), spinners_(std::move(spinners)) {
  if (layout_.node_count() != tree_.node_count())
    throw LayoutMismatch("layout node count differs from tree");
  if (static_cast<int>(spinners_.size()) != tree_.node_count())
    throw LengthMismatch("spinner tables", tree_.node_count(),
                         static_cast<long>(spinners_.size()));
  validate();
}

const SpinnerTable& TssMatrix::spinner(NodeId k) const {
  tree_.check_node(k);
  return spinners_[k - 1];
}

const Eigen::MatrixXd& TssMatrix::diag_block(NodeId k) const {
  return spinner(k).diag;
}

const Eigen::MatrixXd& TssMatrix::inp(NodeId k, NodeId toward) const {
  const SpinnerTable& s = spinner(k);
  auto it = s.inp.find(toward);
  if (it == s.inp.end())
    throw MissingGenerator("Inp[" + std::to_string(toward) + "] at node " +
                           std::to_string(k));
  return it->second;
}

const Eigen::MatrixXd& TssMatrix::out(NodeId k, NodeId from) const {
  const SpinnerTable& s = spinner(k);
  auto it = s.out.find(from);
  if (it == s.out.end())
    throw MissingGenerator("Out[" + std::to_string(from) + "] at node " +
                           std::to_string(k));
  return it->second;
}

const Eigen::MatrixXd& TssMatrix::trans(NodeId k, NodeId toward,
                                        NodeId from) const {
  const SpinnerTable& s = spinner(k);
  auto it = s.trans.find({toward, from});
  if (it == s.trans.end())
    throw MissingGenerator("Trans[" + std::to_string(toward) + "," +
                           std::to_string(from) + "] at node " +
                           std::to_string(k));
  return it->second;
}

void TssMatrix::validate() const {
  for (NodeId k = 1; k <= tree_.node_count(); ++k) {
    const SpinnerTable& s = spinners_[k - 1];
    const std::string at = " at node " + std::to_string(k);
    const int m = layout_.block_rows(k), n = layout_.block_cols(k);
    check_shape(s.diag, m, n, "D" + at);

    const auto& nbrs = tree_.neighbors(k);
    for (const auto& [j, g] : s.inp)
      if (!tree_.has_edge(k, j)) throw NotATreeEdge(k, j);
    for (const auto& [i, g] : s.out)
      if (!tree_.has_edge(i, k)) throw NotATreeEdge(i, k);
    for (const auto& [ij, g] : s.trans) {
      if (ij.first == ij.second)
        throw Error("Trans[" + std::to_string(ij.first) + "," +
                    std::to_string(ij.second) + "]" + at + " is not allowed");
      if (!tree_.has_edge(k, ij.first)) throw NotATreeEdge(k, ij.first);
      if (!tree_.has_edge(ij.second, k)) throw NotATreeEdge(ij.second, k);
    }

    for (NodeId j : nbrs) {
      auto in_it = s.inp.find(j);
      if (in_it == s.inp.end())
        throw MissingGenerator("Inp[" + std::to_string(j) + "]" + at);
      check_shape(in_it->second, profile_.at(k, j), n,
                  "Inp[" + std::to_string(j) + "]" + at);

      auto out_it = s.out.find(j);
      if (out_it == s.out.end())
        throw MissingGenerator("Out[" + std::to_string(j) + "]" + at);
      check_shape(out_it->second, m, profile_.at(j, k),
                  "Out[" + std::to_string(j) + "]" + at);

      for (NodeId i : nbrs) {
        if (i == j) continue;
        auto tr_it = s.trans.find({i, j});
        if (tr_it == s.trans.end())
          throw MissingGenerator("Trans[" + std::to_string(i) + "," +
                                 std::to_string(j) + "]" + at);
        check_shape(tr_it->second, profile_.at(k, i), profile_.at(j, k),
                    "Trans[" + std::to_string(i) + "," + std::to_string(j) +
                        "]" + at);
      }
    }
  }
}

Eigen::MatrixXd TssMatrix::block_entry(NodeId i, NodeId j) const {
  tree_.check_node(i);
  tree_.check_node(j);
  if (i == j) return diag_block(i);
  const std::vector<NodeId> p = tree_.path(j, i);
  const auto nu = p.size() - 1;
  Eigen::MatrixXd acc = inp(j, p[1]);
  for (std::size_t t = 1; t < nu; ++t) acc = trans(p[t], p[t + 1], p[t - 1]) * acc;
  return out(i, p[nu - 1]) * acc;
}

GraphPartitionedMatrix TssMatrix::to_dense() const {
  Eigen::MatrixXd values(layout_.total_rows(), layout_.total_cols());
  for (NodeId i = 1; i <= tree_.node_count(); ++i)
    for (NodeId j = 1; j <= tree_.node_count(); ++j)
      values.block(layout_.row_offset(i), layout_.col_offset(j),
                   layout_.block_rows(i), layout_.block_cols(j)) =
          block_entry(i, j);
  return GraphPartitionedMatrix(tree_, layout_, std::move(values));
}

TssMatrix random_tss(const RootedTree& tree, const BlockLayout& layout,
                     const RankProfile& profile, std::uint64_t seed) {
  GaussianSource rng(seed);
  std::vector<SpinnerTable> spinners(tree.node_count());
  for (NodeId k = 1; k <= tree.node_count(); ++k) {
    SpinnerTable& s = spinners[k - 1];
    const int m = layout.block_rows(k), n = layout.block_cols(k);
    s.diag = rng.matrix(m, n);
    for (NodeId j : tree.neighbors(k)) s.inp[j] = rng.matrix(profile.at(k, j), n);
    for (NodeId i : tree.neighbors(k)) s.out[i] = rng.matrix(m, profile.at(i, k));
    for (NodeId i : tree.neighbors(k))
      for (NodeId j : tree.neighbors(k))
        if (i != j) s.trans[{i, j}] = rng.matrix(profile.at(k, i), profile.at(j, k));
  }
  return TssMatrix(tree, layout, profile, std::move(spinners));
}

TssMatrix block_diagonal_tss(const RootedTree& tree, const BlockLayout& layout,
                             const std::vector<Eigen::MatrixXd>& diag_blocks) {
  if (static_cast<int>(diag_blocks.size()) != tree.node_count())
    throw LengthMismatch("diagonal blocks", tree.node_count(),
                         static_cast<long>(diag_blocks.size()));
  RankProfile profile(tree, 0);
  std::vector<SpinnerTable> spinners(tree.node_count());
  for (NodeId k = 1; k <= tree.node_count(); ++k) {
    SpinnerTable& s = spinners[k - 1];
    const int m = layout.block_rows(k), n = layout.block_cols(k);
    s.diag = diag_blocks[k - 1];
    for (NodeId j : tree.neighbors(k)) {
      s.inp[j] = Eigen::MatrixXd(0, n);
      s.out[j] = Eigen::MatrixXd(m, 0);
      for (NodeId i : tree.neighbors(k))
        if (i != j) s.trans[{i, j}] = Eigen::MatrixXd(0, 0);
    }
  }
  return TssMatrix(tree, layout, profile, std::move(spinners));
}

TssMatrix identity_tss(const RootedTree& tree, const BlockLayout& layout) {
  std::vector<Eigen::MatrixXd> diag_blocks;
  for (NodeId k = 1; k <= tree.node_count(); ++k) {
    const int m = layout.block_rows(k), n = layout.block_cols(k);
    if (m != n) throw NotSquare(m, n);
    diag_blocks.push_back(Eigen::MatrixXd::Identity(m, n));
  }
  return block_diagonal_tss(tree, layout, diag_blocks);
}

}  // namespace tss
