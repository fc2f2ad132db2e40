#pragma once

#include <map>

#include "tss/tree.hpp"

namespace tss {

// One nonnegative rank per directed tree edge. Both orientations of an edge
// carry independent values.
class RankProfile {
public:
  explicit RankProfile(const RootedTree& tree, int initial_rank = 0);

  int at(const DirectedEdge& e) const;
  int at(NodeId from, NodeId to) const { return at(DirectedEdge{from, to}); }
  void set(const DirectedEdge& e, int rank);
  void set(NodeId from, NodeId to, int rank) { set(DirectedEdge{from, to}, rank); }

  int max_rank() const;
  long long total() const;
  const std::map<DirectedEdge, int>& entries() const { return ranks_; }

  friend bool operator==(const RankProfile&, const RankProfile&) = default;

private:
  std::map<DirectedEdge, int> ranks_;
};

}  // namespace tss
