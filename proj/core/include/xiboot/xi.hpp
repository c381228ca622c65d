#pragma once

#include "xiboot/rank.hpp"
#include "xiboot/rng.hpp"
#include "xiboot/sample.hpp"

namespace xiboot {

// 1 - 3 sum|r_{i+1} - r_i| / (n^2 - 1). Valid when the y values are
// pairwise distinct (caller dispatches).
double xi_no_ties(const RankProfile& profile);

// 1 - n sum|r_{i+1} - r_i| / (2 sum l_i (n - l_i)). Valid whenever at least
// two distinct y values exist; throws degenerate_sample when all y values
// are equal (zero denominator). Reduces to xi_no_ties on distinct y values.
double xi_with_ties(const RankProfile& profile);

// Chatterjee's rank correlation: ranks the sample and dispatches on the
// presence of y ties. O(n log n) total. Throws degenerate_sample when all
// y values are equal.
double xi(const PairedSample& sample, Rng& rng);

}  // namespace xiboot
