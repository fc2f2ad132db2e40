#include "tss/solve.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace tss {

LiftedSystem::LiftedSystem(const TssMatrix& t, const Eigen::VectorXd& b)
    : tree_(t.tree()), layout_(t.layout()), profile_(t.profile()) {
  if (layout_.total_rows() != layout_.total_cols())
    throw NotSquare(layout_.total_rows(), layout_.total_cols());
  if (b.size() != layout_.total_rows())
    throw LengthMismatch("rhs", layout_.total_rows(), b.size());

  const int node_count = tree_.node_count();
  group_rows_.resize(node_count);
  group_cols_.resize(node_count);
  rhs_.resize(node_count);

  for (NodeId j = 1; j <= node_count; ++j) {
    int rows = layout_.block_rows(j), cols = layout_.block_cols(j);
    for (NodeId i : tree_.neighbors(j)) {
      rows += profile_.at(j, i);
      cols += profile_.at(i, j);
    }
    group_rows_[j - 1] = rows;
    group_cols_[j - 1] = cols;
  }

  for (NodeId j = 1; j <= node_count; ++j) {
    const int m = layout_.block_rows(j), n = layout_.block_cols(j);
    const auto& nbrs = tree_.neighbors(j);

    Eigen::MatrixXd diag =
        Eigen::MatrixXd::Zero(group_rows_[j - 1], group_cols_[j - 1]);
    diag.topLeftCorner(m, n) = t.diag_block(j);
    for (NodeId i : nbrs)
      diag.block(0, state_offset(j, i), m, profile_.at(i, j)) = t.out(j, i);

    int row = m;
    for (NodeId i : nbrs) {
      const int rho = profile_.at(j, i);
      diag.block(row, 0, rho, n) = -t.inp(j, i);
      for (NodeId w : nbrs) {
        if (w == i) continue;
        diag.block(row, state_offset(j, w), rho, profile_.at(w, j)) =
            -t.trans(j, i, w);
      }
      // identity at g_(j,i)'s slot inside theta_i
      Eigen::MatrixXd coupling =
          Eigen::MatrixXd::Zero(group_rows_[j - 1], group_cols_[i - 1]);
      coupling.block(row, state_offset(i, j), rho, rho) =
          Eigen::MatrixXd::Identity(rho, rho);
      blocks_[{j, i}] = std::move(coupling);
      row += rho;
    }
    blocks_[{j, j}] = std::move(diag);

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(group_rows_[j - 1]);
    beta.head(m) = b.segment(layout_.row_offset(j), m);
    rhs_[j - 1] = std::move(beta);
  }
}

int LiftedSystem::total_rows() const {
  int s = 0;
  for (int r : group_rows_) s += r;
  return s;
}

int LiftedSystem::total_cols() const {
  int s = 0;
  for (int c : group_cols_) s += c;
  return s;
}

bool LiftedSystem::has_block(NodeId i, NodeId j) const {
  return blocks_.count({i, j}) > 0;
}

const Eigen::MatrixXd& LiftedSystem::block(NodeId i, NodeId j) const {
  auto it = blocks_.find({i, j});
  if (it == blocks_.end())
    throw Error("lifted system has no block (" + std::to_string(i) + "," +
                std::to_string(j) + ")");
  return it->second;
}

int LiftedSystem::state_offset(NodeId j, NodeId from) const {
  int off = layout_.block_cols(j);
  for (NodeId i : tree_.neighbors(j)) {
    if (i == from) return off;
    off += profile_.at(i, j);
  }
  throw NotATreeEdge(from, j);
}

Eigen::MatrixXd LiftedSystem::to_dense() const {
  const int node_count = tree_.node_count();
  std::vector<int> row_off(node_count + 1, 0), col_off(node_count + 1, 0);
  for (int i = 1; i <= node_count; ++i) {
    row_off[i] = row_off[i - 1] + group_rows_[i - 1];
    col_off[i] = col_off[i - 1] + group_cols_[i - 1];
  }
  Eigen::MatrixXd out =
      Eigen::MatrixXd::Zero(row_off[node_count], col_off[node_count]);
  for (const auto& [key, mat] : blocks_)
    out.block(row_off[key.first - 1], col_off[key.second - 1], mat.rows(),
              mat.cols()) = mat;
  return out;
}

Eigen::VectorXd LiftedSystem::dense_rhs() const {
  Eigen::VectorXd out(total_rows());
  int off = 0;
  for (const Eigen::VectorXd& r : rhs_) {
    out.segment(off, r.size()) = r;
    off += static_cast<int>(r.size());
  }
  return out;
}

LiftedSystem::Unpacked LiftedSystem::unpack(
    const std::vector<Eigen::VectorXd>& theta) const {
  if (static_cast<int>(theta.size()) != tree_.node_count())
    throw LengthMismatch("solution groups", tree_.node_count(),
                         static_cast<long>(theta.size()));
  Unpacked out;
  out.x.resize(layout_.total_cols());
  for (NodeId j = 1; j <= tree_.node_count(); ++j) {
    const Eigen::VectorXd& tj = theta[j - 1];
    if (tj.size() != group_cols_[j - 1])
      throw LengthMismatch("theta group", group_cols_[j - 1], tj.size());
    out.x.segment(layout_.col_offset(j), layout_.block_cols(j)) =
        tj.head(layout_.block_cols(j));
    for (NodeId i : tree_.neighbors(j))
      out.states[{i, j}] = tj.segment(state_offset(j, i), profile_.at(i, j));
  }
  return out;
}

LiftedSystem assemble_lifted(const TssMatrix& t, const Eigen::VectorXd& b) {
  return LiftedSystem(t, b);
}

LiftedSolution solve_lifted(const LiftedSystem& sys, LiftedSolveStats* stats) {
  const RootedTree& tree = sys.tree();
  const int node_count = tree.node_count();
  auto blocks = sys.blocks();
  std::vector<Eigen::VectorXd> rhs = sys.rhs_groups();

  LiftedSolveStats local_stats;
  LiftedSolveStats& st = stats ? *stats : local_stats;
  st = {};

  std::vector<NodeId> order;
  for (int l = tree.depth(); l >= 1; --l)
    for (NodeId i : tree.levels()[l]) order.push_back(i);
  order.push_back(tree.root());

  std::vector<std::set<NodeId>> active(node_count + 1);
  for (const auto& [key, mat] : blocks)
    if (key.first != key.second) active[key.first].insert(key.second);

  struct Record {
    NodeId node;
    const Eigen::FullPivLU<Eigen::MatrixXd>* lu;
    std::vector<NodeId> coupled;
  };
  std::deque<Eigen::FullPivLU<Eigen::MatrixXd>> lus;
  std::vector<Record> records;
  records.reserve(node_count);

  for (NodeId i : order) {
    const Eigen::MatrixXd& diag = blocks.at({i, i});
    if (diag.rows() != diag.cols())
      throw SingularPivotBlock(
          i, "group is " + std::to_string(diag.rows()) + "x" +
                 std::to_string(diag.cols()));
    lus.emplace_back(diag);
    const auto& lu = lus.back();
    if (diag.rows() > 0 && !lu.isInvertible()) throw SingularPivotBlock(i);
    st.multiply_adds += static_cast<std::int64_t>(diag.rows()) * diag.rows() *
                        diag.rows() / 3;

    std::vector<NodeId> nbrs(active[i].begin(), active[i].end());
    if (!nbrs.empty()) {
      const std::int64_t s = diag.rows();
      const Eigen::VectorXd yi = lu.solve(rhs[i - 1]);
      st.multiply_adds += s * s;
      for (NodeId b : nbrs) {
        const Eigen::MatrixXd pivoted = lu.solve(blocks.at({i, b}));
        st.multiply_adds += s * s * pivoted.cols();
        for (NodeId a : nbrs) {
          const Eigen::MatrixXd& e_ai = blocks.at({a, i});
          st.multiply_adds += e_ai.rows() * s * pivoted.cols();
          auto it = blocks.find({a, b});
          if (it != blocks.end()) {
            it->second.noalias() -= e_ai * pivoted;
          } else {
            blocks[{a, b}] = -e_ai * pivoted;
            ++st.fill_blocks;
            active[a].insert(b);
            active[b].insert(a);
          }
        }
      }
      for (NodeId a : nbrs) {
        const Eigen::MatrixXd& e_ai = blocks.at({a, i});
        rhs[a - 1].noalias() -= e_ai * yi;
        st.multiply_adds += e_ai.rows() * e_ai.cols();
        active[a].erase(i);
      }
    }
    records.push_back({i, &lu, std::move(nbrs)});
  }

  std::vector<Eigen::VectorXd> theta(node_count);
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    Eigen::VectorXd r = rhs[it->node - 1];
    for (NodeId b : it->coupled) {
      r.noalias() -= blocks.at({it->node, b}) * theta[b - 1];
      st.multiply_adds += blocks.at({it->node, b}).rows() *
                          blocks.at({it->node, b}).cols();
    }
    theta[it->node - 1] = it->lu->solve(r);
    st.multiply_adds += static_cast<std::int64_t>(r.size()) * r.size();
  }

  LiftedSystem::Unpacked u = sys.unpack(theta);
  return {std::move(u.x), std::move(u.states)};
}

Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != a.cols()) throw NotSquare(a.rows(), a.cols());
  if (b.size() != a.rows())
    throw LengthMismatch("rhs", a.rows(), b.size());
  if (!a.allFinite() || !b.allFinite())
    throw NonFiniteInput("dense_solve: non-finite entries");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (a.rows() > 0 && !lu.isInvertible())
    throw SingularMatrix("dense_solve: matrix is singular");
  return lu.solve(b);
}

Eigen::VectorXd solve(const TssMatrix& t, const Eigen::VectorXd& b) {
  try {
    return solve_lifted(assemble_lifted(t, b)).x;
  } catch (const SingularPivotBlock&) {
    return dense_solve(t.to_dense().values(), b);
  }
}

}  // namespace tss
