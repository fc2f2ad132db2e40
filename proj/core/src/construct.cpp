#include "tss/construct.hpp"

#include <algorithm>
#include <optional>

namespace tss {

namespace {

// Matrix whose row (or column) blocks are owned by `nodes`, ascending.
struct Stacked {
  Eigen::MatrixXd mat;
  std::vector<NodeId> nodes;
};

// Restrict a row-stacked factor to the row blocks of `wanted` (a subset of
// x.nodes, both ascending).
Eigen::MatrixXd gather_rows(const Stacked& x, const std::vector<NodeId>& wanted,
                            const BlockLayout& layout) {
  int rows = 0;
  for (NodeId a : wanted) rows += layout.block_rows(a);
  Eigen::MatrixXd out(rows, x.mat.cols());
  int src = 0, dst = 0;
  std::size_t w = 0;
  for (NodeId a : x.nodes) {
    const int h = layout.block_rows(a);
    if (w < wanted.size() && wanted[w] == a) {
      out.middleRows(dst, h) = x.mat.middleRows(src, h);
      dst += h;
      ++w;
    }
    src += h;
  }
  if (w != wanted.size())
    throw Error("internal: stacked factor does not cover requested rows");
  return out;
}

}  // namespace

TssMatrix construct_tss(const GraphPartitionedMatrix& t, double tol,
                        ConstructionTrace* trace) {
  if (!t.values().allFinite())
    throw NonFiniteInput("construct_tss: non-finite entries");
  const RootedTree& tree = t.tree();
  const BlockLayout& layout = t.layout();
  const int node_count = tree.node_count();
  // All truncation decisions compare singular values against the norm of the
  // whole matrix, so blocks at round-off level collapse to rank zero.
  const double scale = t.values().norm();

  RankProfile profile(tree, 0);
  std::vector<SpinnerTable> spinners(node_count);
  for (NodeId k = 1; k <= node_count; ++k) spinners[k - 1].diag = t.block(k, k);

  std::map<DirectedEdge, Stacked> x_factors;  // left factors, rows ascending
  std::map<DirectedEdge, Stacked> y_factors;  // right factors, cols ascending

  // Factor the Hankel block of edge e without forming it: its column groups
  // are already factored by the `reused` edges except for the single block
  // column of `base`. Returns the right factor split by column group, the
  // base group last.
  auto factor_edge = [&](const DirectedEdge& e,
                         const std::vector<NodeId>& row_nodes,
                         const std::vector<DirectedEdge>& reused,
                         NodeId base) -> std::vector<Eigen::MatrixXd> {
    std::vector<int> widths;
    int f_cols = 0;
    for (const DirectedEdge& re : reused) {
      widths.push_back(static_cast<int>(x_factors.at(re).mat.cols()));
      f_cols += widths.back();
    }
    const int n_base = layout.block_cols(base);
    int f_rows = 0;
    for (NodeId a : row_nodes) f_rows += layout.block_rows(a);

    Eigen::MatrixXd f(f_rows, f_cols + n_base);
    int c = 0;
    for (std::size_t g = 0; g < reused.size(); ++g) {
      f.middleCols(c, widths[g]) =
          gather_rows(x_factors.at(reused[g]), row_nodes, layout);
      c += widths[g];
    }
    const NodeId base_col[] = {base};
    f.middleCols(c, n_base) = t.submatrix(row_nodes, base_col);

    // Coupling matrix: rows follow the column groups of F, columns span the
    // union of the reused couplings' nodes plus {base}, canonical ascending.
    std::vector<NodeId> col_nodes;
    for (const DirectedEdge& re : reused) {
      const auto& yn = y_factors.at(re).nodes;
      col_nodes.insert(col_nodes.end(), yn.begin(), yn.end());
    }
    col_nodes.push_back(base);
    std::sort(col_nodes.begin(), col_nodes.end());

    std::map<NodeId, int> col_offset;
    int g_cols = 0;
    for (NodeId a : col_nodes) {
      col_offset[a] = g_cols;
      g_cols += layout.block_cols(a);
    }

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(f_cols + n_base, g_cols);
    int r = 0;
    for (std::size_t gi = 0; gi < reused.size(); ++gi) {
      const Stacked& y = y_factors.at(reused[gi]);
      int yc = 0;
      for (NodeId a : y.nodes) {
        const int w = layout.block_cols(a);
        g.block(r, col_offset.at(a), widths[gi], w) = y.mat.middleCols(yc, w);
        yc += w;
      }
      r += widths[gi];
    }
    g.block(r, col_offset.at(base), n_base, n_base).setIdentity();

    if (trace) {
      trace->stacked_factor[e] = f;
      trace->coupling[e] = g;
    }

    // The Hankel block of e is F G, never formed. Its singular values are
    // those of F L where G = L Q with orthonormal rows Q, so rank decisions
    // on F L match a direct factorization of the Hankel block.
    Eigen::MatrixXd fl(f.rows(), 0);
    Eigen::MatrixXd q_rows(0, g.cols());
    const Eigen::Index mid = std::min(g.rows(), g.cols());
    if (mid > 0) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(g.transpose());
      const Eigen::MatrixXd thin_q =
          qr.householderQ() * Eigen::MatrixXd::Identity(g.cols(), mid);
      const Eigen::MatrixXd r_thin =
          qr.matrixQR().topRows(mid).triangularView<Eigen::Upper>();
      fl = f * r_thin.transpose();
      q_rows = thin_q.transpose();
    }

    LowRankFactors fac = rank_reveal(fl, tol, scale);
    profile.set(e, fac.rank);

    // Coefficients of F in the kept basis; equals the right factor of F when
    // nothing is truncated.
    const Eigen::MatrixXd z = fac.left.transpose() * f;
    std::vector<Eigen::MatrixXd> z_groups;
    int zc = 0;
    for (int w : widths) {
      z_groups.push_back(z.middleCols(zc, w));
      zc += w;
    }
    z_groups.push_back(z.middleCols(zc, n_base));

    x_factors[e] = Stacked{std::move(fac.left), row_nodes};
    y_factors[e] = Stacked{fac.right * q_rows, std::move(col_nodes)};
    return z_groups;
  };

  // Upsweep, deepest level first: edge (i, parent). Column groups of F are
  // the children's up-edge factors restricted to the rows above i, then the
  // block column of i itself.
  for (int l = tree.depth(); l >= 1; --l) {
    for (NodeId i : tree.levels()[l]) {
      const NodeId j = *tree.parent(i);
      const DirectedEdge e{i, j};
      const std::vector<NodeId> row_nodes = complement(tree, tree.descendants(i));
      std::vector<DirectedEdge> reused;
      for (NodeId w : tree.children(i)) reused.push_back({w, i});

      std::vector<Eigen::MatrixXd> z = factor_edge(e, row_nodes, reused, i);
      const auto& kids = tree.children(i);
      for (std::size_t ci = 0; ci < kids.size(); ++ci)
        spinners[i - 1].trans[{j, kids[ci]}] = std::move(z[ci]);
      spinners[i - 1].inp[j] = std::move(z.back());
      spinners[j - 1].out[i] =
          gather_rows(x_factors.at(e), {j}, layout);
    }
  }

  // Downsweep, level 1 first: edge (parent, i). Column groups of F are the
  // grandparent's down-edge factor (absent at level 1), the siblings'
  // up-edge factors, and the block column of the parent, all restricted to
  // the rows of the subtree of i.
  for (int l = 1; l <= tree.depth(); ++l) {
    for (NodeId i : tree.levels()[l]) {
      const NodeId j = *tree.parent(i);
      const DirectedEdge e{j, i};
      const std::vector<NodeId> row_nodes = tree.descendants(i);
      const std::optional<NodeId> k = tree.parent(j);
      const std::vector<NodeId> sibs = tree.siblings(i);
      std::vector<DirectedEdge> reused;
      if (k) reused.push_back({*k, j});
      for (NodeId v : sibs) reused.push_back({v, j});

      std::vector<Eigen::MatrixXd> z = factor_edge(e, row_nodes, reused, j);
      std::size_t idx = 0;
      if (k) spinners[j - 1].trans[{i, *k}] = std::move(z[idx++]);
      for (NodeId v : sibs) spinners[j - 1].trans[{i, v}] = std::move(z[idx++]);
      spinners[j - 1].inp[i] = std::move(z[idx]);
      spinners[i - 1].out[j] = gather_rows(x_factors.at(e), {i}, layout);
    }
  }

  return TssMatrix(tree, layout, std::move(profile), std::move(spinners));
}

RankProfile hankel_rank_profile(const GraphPartitionedMatrix& t, double tol) {
  const double scale = t.values().norm();
  RankProfile profile(t.tree(), 0);
  for (const DirectedEdge& e : t.tree().directed_edges())
    profile.set(e, numerical_rank(t.unit_hankel(e), tol, scale));
  return profile;
}

}  // namespace tss
