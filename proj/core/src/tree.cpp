#include "tss/tree.hpp"

#include <algorithm>
#include <queue>

namespace tss {

RootedTree::RootedTree(int node_count,
                       const std::vector<std::pair<NodeId, NodeId>>& edges,
                       NodeId root)
    : node_count_(node_count), root_(root) {
  if (node_count < 1) throw Error("node_count must be >= 1");
  if (root < 1 || root > node_count) throw BadNodeId(root, node_count);
  if (static_cast<int>(edges.size()) > node_count - 1)
    throw CycleDetected("more than node_count - 1 edges");
  if (static_cast<int>(edges.size()) < node_count - 1)
    throw DisconnectedGraph("fewer than node_count - 1 edges");

  adjacency_.assign(node_count + 1, {});
  for (auto [a, b] : edges) {
    if (a < 1 || a > node_count) throw BadNodeId(a, node_count);
    if (b < 1 || b > node_count) throw BadNodeId(b, node_count);
    if (a == b) throw CycleDetected("self loop at node " + std::to_string(a));
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  parent_.assign(node_count + 1, 0);
  level_.assign(node_count + 1, -1);
  children_.assign(node_count + 1, {});
  std::queue<NodeId> frontier;
  frontier.push(root);
  level_[root] = 0;
  int visited = 0;
  while (!frontier.empty()) {
    NodeId i = frontier.front();
    frontier.pop();
    ++visited;
    for (NodeId j : adjacency_[i]) {
      if (j == parent_[i]) continue;
      if (level_[j] >= 0) throw CycleDetected("duplicate or cyclic edges");
      parent_[j] = i;
      level_[j] = level_[i] + 1;
      children_[i].push_back(j);
      frontier.push(j);
    }
  }
  if (visited != node_count) throw DisconnectedGraph("graph is not connected");

  int depth = *std::max_element(level_.begin() + 1, level_.end());
  levels_.assign(depth + 1, {});
  for (NodeId i = 1; i <= node_count; ++i) {
    levels_[level_[i]].push_back(i);
    if (children_[i].empty()) leaves_.push_back(i);
  }
}

void RootedTree::check_node(NodeId i) const {
  if (i < 1 || i > node_count_) throw BadNodeId(i, node_count_);
}

int RootedTree::level(NodeId i) const {
  check_node(i);
  return level_[i];
}

std::optional<NodeId> RootedTree::parent(NodeId i) const {
  check_node(i);
  if (i == root_) return std::nullopt;
  return parent_[i];
}

const std::vector<NodeId>& RootedTree::children(NodeId i) const {
  check_node(i);
  return children_[i];
}

const std::vector<NodeId>& RootedTree::neighbors(NodeId i) const {
  check_node(i);
  return adjacency_[i];
}

std::vector<NodeId> RootedTree::siblings(NodeId i) const {
  check_node(i);
  if (i == root_) return {};
  std::vector<NodeId> out;
  for (NodeId c : children_[parent_[i]])
    if (c != i) out.push_back(c);
  return out;
}

bool RootedTree::has_edge(NodeId i, NodeId j) const {
  check_node(i);
  check_node(j);
  return std::binary_search(adjacency_[i].begin(), adjacency_[i].end(), j);
}

std::vector<std::pair<NodeId, NodeId>> RootedTree::undirected_edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId i = 1; i <= node_count_; ++i)
    if (i != root_) out.emplace_back(i, parent_[i]);
  return out;
}

std::vector<DirectedEdge> RootedTree::directed_edges() const {
  std::vector<DirectedEdge> out;
  for (NodeId i = 1; i <= node_count_; ++i)
    for (NodeId j : adjacency_[i]) out.push_back({i, j});
  return out;
}

std::vector<NodeId> RootedTree::path(NodeId i, NodeId j) const {
  check_node(i);
  check_node(j);
  std::vector<NodeId> from_i, from_j;
  NodeId a = i, b = j;
  while (level_[a] > level_[b]) {
    from_i.push_back(a);
    a = parent_[a];
  }
  while (level_[b] > level_[a]) {
    from_j.push_back(b);
    b = parent_[b];
  }
  while (a != b) {
    from_i.push_back(a);
    a = parent_[a];
    from_j.push_back(b);
    b = parent_[b];
  }
  from_i.push_back(a);
  from_i.insert(from_i.end(), from_j.rbegin(), from_j.rend());
  return from_i;
}

std::vector<NodeId> RootedTree::descendants(NodeId i) const {
  check_node(i);
  std::vector<NodeId> out, stack{i};
  while (!stack.empty()) {
    NodeId k = stack.back();
    stack.pop_back();
    out.push_back(k);
    for (NodeId c : children_[k]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> complement(const RootedTree& tree,
                               std::span<const NodeId> subset) {
  std::vector<bool> in_subset(tree.node_count() + 1, false);
  for (NodeId i : subset) {
    tree.check_node(i);
    in_subset[i] = true;
  }
  std::vector<NodeId> out;
  for (NodeId i = 1; i <= tree.node_count(); ++i)
    if (!in_subset[i]) out.push_back(i);
  return out;
}

RootedTree line_tree(int node_count) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i < node_count; ++i) edges.emplace_back(i, i + 1);
  return RootedTree(node_count, edges, node_count);
}

namespace {

NodeId build_hss_subtree(int leaf_count, NodeId& next_id,
                         std::vector<std::pair<NodeId, NodeId>>& edges,
                         std::vector<NodeId>& internal_nodes) {
  if (leaf_count == 1) return next_id++;
  int left = 1;
  while (left * 2 < leaf_count) left *= 2;
  NodeId l = build_hss_subtree(left, next_id, edges, internal_nodes);
  NodeId r = build_hss_subtree(leaf_count - left, next_id, edges, internal_nodes);
  NodeId me = next_id++;
  edges.emplace_back(l, me);
  edges.emplace_back(r, me);
  internal_nodes.push_back(me);
  return me;
}

}  // namespace

HssTree hss_binary_tree(int num_leaves) {
  if (num_leaves < 2) throw BadLeafCount(num_leaves);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> internal_nodes;
  NodeId next_id = 1;
  NodeId root = build_hss_subtree(num_leaves, next_id, edges, internal_nodes);
  std::sort(internal_nodes.begin(), internal_nodes.end());
  return {RootedTree(next_id - 1, edges, root), std::move(internal_nodes)};
}

}  // namespace tss
