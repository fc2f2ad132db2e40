#pragma once

#include <compare>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tss/errors.hpp"

namespace tss {

// Node ids are 1-based everywhere.
using NodeId = int;

// Directed tree edge (from, to). Each undirected edge {i,j} appears in two
// orientations, (i,j) and (j,i).
struct DirectedEdge {
  NodeId from = 0;
  NodeId to = 0;
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

// A connected acyclic graph on nodes 1..K with a designated root. Levels are
// distances from the root: level 0 is the root itself, the deepest nodes sit
// at level depth().
class RootedTree {
public:
  RootedTree(int node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
             NodeId root);

  int node_count() const { return node_count_; }
  NodeId root() const { return root_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }

  void check_node(NodeId i) const;

  int level(NodeId i) const;
  std::optional<NodeId> parent(NodeId i) const;
  const std::vector<NodeId>& children(NodeId i) const;    // ascending
  const std::vector<NodeId>& neighbors(NodeId i) const;   // ascending
  std::vector<NodeId> siblings(NodeId i) const;           // ascending, excludes i
  bool is_leaf(NodeId i) const { return children(i).empty(); }

  const std::vector<NodeId>& leaves() const { return leaves_; }
  const std::vector<std::vector<NodeId>>& levels() const { return levels_; }

  bool has_edge(NodeId i, NodeId j) const;
  int edge_count() const { return node_count_ - 1; }
  // Each undirected edge once as (child, parent).
  std::vector<std::pair<NodeId, NodeId>> undirected_edges() const;
  // Both orientations of every edge, lexicographically sorted.
  std::vector<DirectedEdge> directed_edges() const;

  // Unique path from i to j, endpoints included. path(i, i) is {i}.
  std::vector<NodeId> path(NodeId i, NodeId j) const;

  // Nodes of the subtree hanging below i (i included), ascending.
  std::vector<NodeId> descendants(NodeId i) const;

  friend bool operator==(const RootedTree&, const RootedTree&) = default;

private:
  int node_count_ = 0;
  NodeId root_ = 0;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<NodeId> parent_;  // 0 means no parent (the root)
  std::vector<std::vector<NodeId>> children_;
  std::vector<int> level_;
  std::vector<std::vector<NodeId>> levels_;
  std::vector<NodeId> leaves_;
};

// Complement of `subset` in 1..node_count, ascending. Members of `subset`
// must be valid node ids; duplicates are tolerated.
std::vector<NodeId> complement(const RootedTree& tree,
                               std::span<const NodeId> subset);

// Path graph 1 - 2 - ... - K rooted at K.
RootedTree line_tree(int node_count);

// Binary partition tree in post order: children get smaller ids than their
// parent, the root has the largest id. `empty_nodes` lists the internal
// nodes, whose row/column blocks are empty in an HSS partition.
struct HssTree {
  RootedTree tree;
  std::vector<NodeId> empty_nodes;
};
HssTree hss_binary_tree(int num_leaves);

}  // namespace tss
