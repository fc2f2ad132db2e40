#pragma once

#include <cstdint>

#include "tss/construct.hpp"
#include "tss/tss_matrix.hpp"

namespace tss {

// Sum, product and inverse over the same tree, computed by materializing and
// re-constructing. The results are minimal, so their edge ranks obey
//   rank_sum(e)  <= rank_a(e) + rank_b(e)
//   rank_prod(e) <= rank_a(e) + rank_b(e)
//   rank_inv(e)  == rank_a(e)   for invertible a with minimal profile.
TssMatrix add(const TssMatrix& a, const TssMatrix& b,
              double tol = kDefaultTolerance);
TssMatrix multiply(const TssMatrix& a, const TssMatrix& b,
                   double tol = kDefaultTolerance);
TssMatrix inverse(const TssMatrix& a, double tol = kDefaultTolerance);

struct GirsReport {
  double constant = 0;        // bound the ranks were tested against
  double max_ratio = 0;       // max over subsets of rank / border edge count
  long long subsets_checked = 0;
  long long violations = 0;
  bool exhaustive = false;
};

// Check rank(T<complement(A), A>) <= c * border_edge_count(A) over node
// subsets A: all nonempty proper subsets when there are at most 2^10 of
// them, otherwise `samples` random subsets plus the unit Hankel subset of
// every directed edge.
GirsReport verify_girs(const GraphPartitionedMatrix& t, double c,
                       long long samples, std::uint64_t seed,
                       double tol = kDefaultTolerance);

}  // namespace tss
