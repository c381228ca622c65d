#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "xiboot/bootstrap.hpp"
#include "xiboot/calibration.hpp"
#include "xiboot/m_selection.hpp"
#include "xiboot/models.hpp"

namespace xiboot {

struct StudyConfig {
  ModelSpec model;
  std::size_t n = 500;
  std::size_t runs = 1000;        // M
  std::size_t replicates = 2000;  // B per bootstrap distribution
  MSelectionRule rule;
  double level = 0.95;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t max_degenerate_retries = 1000;
};

struct StudyRun {
  std::size_t run = 0;
  double xi_n = 0.0;
  std::size_t chosen_m = 0;
  double sigma_star_sq = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool covered = false;
};

struct StudyReport {
  double rmse = 0.0;    // sqrt(mean (sigma*^2 - sigma^2_truth)^2)
  double rrmse = 0.0;   // rmse / sigma^2_truth
  double coverage = 0.0;
  double coverage_se = 0.0;  // binomial SE over completed runs
  double mean_ci_length = 0.0;
  std::vector<StudyRun> records;  // completed runs, in run order
  std::size_t failed_runs = 0;    // degenerate / exhausted runs, excluded
};

// What one run estimates from its sample; the default implementation picks
// m per the rule and takes the chosen candidate's bootstrap variance. The
// hook exists so studies can be driven with a stubbed estimator.
struct RunOutcome {
  double xi_n = 0.0;
  double sigma_star_sq = 0.0;
  std::size_t chosen_m = 0;
};

using RunEstimator = std::function<RunOutcome(const PairedSample& sample,
                                              std::uint64_t run_seed)>;

// Monte Carlo study: for each of cfg.runs, draw a sample, estimate
// (xi_n, sigma*^2), build the CI, and check coverage against
// truth.xi_hat. Runs that raise degenerate_sample or degeneracy_exhausted
// are excluded and counted in failed_runs. Deterministic for fixed
// (cfg, truth, seed) at every thread count.
StudyReport run_study(const StudyConfig& cfg, const CalibrationResult& truth);
StudyReport run_study(const StudyConfig& cfg, const CalibrationResult& truth,
                      const RunEstimator& estimator);

}  // namespace xiboot
