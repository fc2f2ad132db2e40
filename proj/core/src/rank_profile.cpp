#include "tss/rank_profile.hpp"

#include <algorithm>

namespace tss {

RankProfile::RankProfile(const RootedTree& tree, int initial_rank) {
  if (initial_rank < 0) throw Error("edge rank must be nonnegative");
  for (const DirectedEdge& e : tree.directed_edges()) ranks_[e] = initial_rank;
}

int RankProfile::at(const DirectedEdge& e) const {
  auto it = ranks_.find(e);
  if (it == ranks_.end()) throw NotATreeEdge(e.from, e.to);
  return it->second;
}

void RankProfile::set(const DirectedEdge& e, int rank) {
  if (rank < 0) throw Error("edge rank must be nonnegative");
  auto it = ranks_.find(e);
  if (it == ranks_.end()) throw NotATreeEdge(e.from, e.to);
  it->second = rank;
}

int RankProfile::max_rank() const {
  int m = 0;
  for (const auto& [e, r] : ranks_) m = std::max(m, r);
  return m;
}

long long RankProfile::total() const {
  long long t = 0;
  for (const auto& [e, r] : ranks_) t += r;
  return t;
}

}  // namespace tss
