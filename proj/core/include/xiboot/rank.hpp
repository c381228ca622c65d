#pragma once

#include <cstdint>
#include <vector>

#include "xiboot/rng.hpp"
#include "xiboot/sample.hpp"

namespace xiboot {

// Rank data for a sample arranged by ascending x. With y_(i) the y value at
// sorted position i, ranks[i] = #{j : y_(j) <= y_(i)} (maximal rank, so a
// permutation of 1..n when the y values are distinct) and
// ge_counts[i] = #{j : y_(j) >= y_(i)}. `order` is the arrangement actually
// used (position -> original index) and records the random tie-break among
// equal x values.
struct RankProfile {
  std::vector<std::int64_t> ranks;      // r_i
  std::vector<std::int64_t> ge_counts;  // l_i
  std::vector<std::size_t> order;
};

// Sorts the sample by ascending x, permuting each block of equal x values
// uniformly at random, and computes the rank vectors in O(n log n).
// Randomness is consumed only when x ties exist, so distinct-x inputs give
// the same profile for every seed. Throws invalid_input for n < 2.
RankProfile compute_ranks(const PairedSample& sample, Rng& rng);

}  // namespace xiboot
