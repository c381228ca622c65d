#include "xiboot/xi.hpp"

#include <cstdlib>

#include "xiboot/errors.hpp"

namespace xiboot {

namespace {

// Both rank sums are exact integers; 128-bit accumulators keep them exact
// up to n around 1e9 (sum l_i (n - l_i) can reach n^3 / 4).
unsigned __int128 rank_jump_sum(const RankProfile& profile) {
  unsigned __int128 jumps = 0;
  for (std::size_t i = 0; i + 1 < profile.ranks.size(); ++i) {
    jumps += static_cast<std::uint64_t>(
        std::llabs(profile.ranks[i + 1] - profile.ranks[i]));
  }
  return jumps;
}

}  // namespace

double xi_no_ties(const RankProfile& profile) {
  const double n = static_cast<double>(profile.ranks.size());
  const double jumps = static_cast<double>(rank_jump_sum(profile));
  return 1.0 - 3.0 * jumps / (n * n - 1.0);
}

double xi_with_ties(const RankProfile& profile) {
  const std::size_t n = profile.ranks.size();
  unsigned __int128 denom = 0;
  for (const std::int64_t l : profile.ge_counts) {
    denom += static_cast<unsigned __int128>(l) *
             static_cast<std::uint64_t>(static_cast<std::int64_t>(n) - l);
  }
  if (denom == 0) {
    throw degenerate_sample("xi: all y values equal, statistic undefined");
  }
  const unsigned __int128 numer =
      static_cast<unsigned __int128>(n) * rank_jump_sum(profile);
  return 1.0 - static_cast<double>(numer) / (2.0 * static_cast<double>(denom));
}

double xi(const PairedSample& sample, Rng& rng) {
  const RankProfile profile = compute_ranks(sample, rng);
  // Distinct y values iff sum l_i = n (n + 1) / 2; ties only inflate it.
  const std::size_t n = profile.ranks.size();
  unsigned __int128 ge_total = 0;
  for (const std::int64_t l : profile.ge_counts) {
    ge_total += static_cast<std::uint64_t>(l);
  }
  const unsigned __int128 distinct_total =
      static_cast<unsigned __int128>(n) * (n + 1) / 2;
  if (ge_total == distinct_total) return xi_no_ties(profile);
  return xi_with_ties(profile);
}

}  // namespace xiboot
