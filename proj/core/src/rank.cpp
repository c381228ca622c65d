#include "xiboot/rank.hpp"

#include <algorithm>
#include <numeric>

#include "xiboot/errors.hpp"

namespace xiboot {

RankProfile compute_ranks(const PairedSample& sample, Rng& rng) {
  validate(sample);
  const std::size_t n = sample.size();
  const auto& xs = sample.xs;
  const auto& ys = sample.ys;

  // Sorting (value, index) pairs beats an index argsort here: the
  // comparisons stay in contiguous memory.
  std::vector<std::pair<double, std::size_t>> by_x(n);
  for (std::size_t i = 0; i < n; ++i) by_x[i] = {xs[i], i};
  std::sort(by_x.begin(), by_x.end());

  RankProfile profile;
  profile.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) profile.order[i] = by_x[i].second;

  // Uniformly permute each block of equal x values. Blocks of size one
  // consume no randomness, so distinct-x inputs are seed-independent.
  std::size_t block = 0;
  while (block < n) {
    std::size_t end = block + 1;
    while (end < n && by_x[end].first == by_x[block].first) ++end;
    if (end - block > 1) rng.shuffle(&profile.order[block], end - block);
    block = end;
  }

  // Rank by y: sort (y, position) pairs and assign per tie-group, giving
  // the maximal rank r = #(y <= .) and l = #(y >= .) in one pass.
  std::vector<std::pair<double, std::size_t>> by_y(n);
  for (std::size_t i = 0; i < n; ++i) by_y[i] = {ys[profile.order[i]], i};
  std::sort(by_y.begin(), by_y.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  profile.ranks.resize(n);
  profile.ge_counts.resize(n);
  std::size_t group = 0;
  while (group < n) {
    std::size_t end = group + 1;
    while (end < n && by_y[end].first == by_y[group].first) ++end;
    for (std::size_t k = group; k < end; ++k) {
      profile.ranks[by_y[k].second] = static_cast<std::int64_t>(end);
      profile.ge_counts[by_y[k].second] =
          static_cast<std::int64_t>(n - group);
    }
    group = end;
  }
  return profile;
}

}  // namespace xiboot
