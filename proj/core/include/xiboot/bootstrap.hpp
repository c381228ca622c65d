#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xiboot/rng.hpp"
#include "xiboot/sample.hpp"

namespace xiboot {

struct BootstrapConfig {
  std::size_t m = 0;                        // subsample size, 2 <= m < n
  std::size_t replicates = 2000;            // B
  std::uint64_t seed = 0;
  std::size_t max_degenerate_retries = 1000;  // redraw cap per replicate
  unsigned threads = 1;
};

// The B realizations of sqrt(m) * xi_m on subsamples, centered by their
// Monte Carlo mean. `center` is that mean: the estimate of
// sqrt(m) E[xi_m | data], whose exact value is a U-statistic average over
// all C(n, m) subsets and infeasible to enumerate.
struct BootstrapDistribution {
  std::vector<double> atoms;  // length B, mean 0 within 1e-10
  std::size_t m = 0;
  double center = 0.0;
};

struct BootstrapEstimate {
  double xi_n = 0.0;
  double sigma_star_sq = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double level = 0.0;
  double z = 0.0;  // normal quantile used
};

// m pairs drawn uniformly without replacement (Floyd's algorithm followed
// by an index sort; expected O(m log m)). Requires 1 <= m < n.
PairedSample draw_subsample(const PairedSample& sample, std::size_t m,
                            Rng& rng);

// Builds the conditional bootstrap distribution. Replicate b draws from the
// stream derive_seed(cfg.seed, b), redrawing degenerate subsamples up to
// cfg.max_degenerate_retries times; atoms come out identical for every
// thread count. Throws degenerate_sample if the sample itself is
// degenerate, degeneracy_exhausted if a replicate runs out of redraws.
BootstrapDistribution bootstrap_distribution(const PairedSample& sample,
                                             const BootstrapConfig& cfg);

// Unbiased sample variance of the atoms (B - 1 denominator). B >= 2.
double bootstrap_variance(const BootstrapDistribution& dist);

// Normal confidence interval xi_n -+ z * sigma_star / sqrt(n) with z the
// standard normal quantile at (1 + level) / 2.
BootstrapEstimate confidence_interval(double xi_n, double sigma_star,
                                      std::size_t n, double level);

}  // namespace xiboot
