#include "tss/matvec.hpp"

namespace tss {

Eigen::VectorXd matvec(const TssMatrix& t, const Eigen::VectorXd& x,
                       EdgeStates* states_out) {
  const RootedTree& tree = t.tree();
  const BlockLayout& layout = t.layout();
  if (x.size() != layout.total_cols())
    throw LengthMismatch("matvec input", layout.total_cols(), x.size());

  auto x_block = [&](NodeId k) {
    return x.segment(layout.col_offset(k), layout.block_cols(k));
  };

  EdgeStates states;
  auto compute_state = [&](NodeId i, NodeId j) {
    Eigen::VectorXd g = t.inp(i, j) * x_block(i);
    for (NodeId w : tree.neighbors(i)) {
      if (w == j) continue;
      g.noalias() += t.trans(i, j, w) * states.at({w, i});
    }
    states[{i, j}] = std::move(g);
  };

  // Toward the root first, then away from it: every state a step needs has
  // been computed by an earlier step.
  for (int l = tree.depth(); l >= 1; --l)
    for (NodeId i : tree.levels()[l]) compute_state(i, *tree.parent(i));
  for (int l = 1; l <= tree.depth(); ++l)
    for (NodeId i : tree.levels()[l]) compute_state(*tree.parent(i), i);

  Eigen::VectorXd b(layout.total_rows());
  for (NodeId k = 1; k <= tree.node_count(); ++k) {
    Eigen::VectorXd bk = t.diag_block(k) * x_block(k);
    for (NodeId i : tree.neighbors(k))
      bk.noalias() += t.out(k, i) * states.at({i, k});
    b.segment(layout.row_offset(k), layout.block_rows(k)) = bk;
  }
  if (states_out) *states_out = std::move(states);
  return b;
}

std::int64_t matvec_opcount(const TssMatrix& t) {
  const RootedTree& tree = t.tree();
  const BlockLayout& layout = t.layout();
  const RankProfile& profile = t.profile();
  std::int64_t ops = 0;
  for (NodeId k = 1; k <= tree.node_count(); ++k)
    ops += static_cast<std::int64_t>(layout.block_rows(k)) * layout.block_cols(k);
  for (const DirectedEdge& e : tree.directed_edges()) {
    const std::int64_t rho = profile.at(e);
    ops += rho * layout.block_cols(e.from);
    for (NodeId w : tree.neighbors(e.from))
      if (w != e.to) ops += rho * profile.at(w, e.from);
    ops += static_cast<std::int64_t>(layout.block_rows(e.to)) * rho;
  }
  return ops;
}

}  // namespace tss
