#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xiboot/bootstrap.hpp"
#include "xiboot/sample.hpp"

namespace xiboot {

// Rule for choosing the subsample size m.
struct MSelectionRule {
  enum class Kind { kFixedPower, kBickelSakov, kCluster };

  // 0.40, 0.45, ..., 0.90.
  static std::vector<double> default_gamma_grid();

  Kind kind = Kind::kCluster;
  double gamma = 0.5;       // fixed-power exponent, in (0, 1)
  double q = 0.5;           // Bickel-Sakov decay, in (0, 1)
  std::size_t m_floor = 3;  // Bickel-Sakov stop (exclusive)
  // cluster grid, strictly increasing
  std::vector<double> gammas = default_gamma_grid();

  static MSelectionRule fixed_power(double gamma);
  static MSelectionRule bickel_sakov(double q = 0.5, std::size_t m_floor = 3);
  static MSelectionRule cluster(std::vector<double> gammas = default_gamma_grid());
};

struct CandidateDistribution {
  std::size_t m = 0;
  BootstrapDistribution distribution;
};

// Audit trail of an m selection: every candidate distribution, the
// Kolmogorov distances actually computed (NaN where a pair was not
// needed), and the choice.
struct SelectionTrace {
  std::vector<CandidateDistribution> candidates;
  std::vector<std::vector<double>> distances;  // K x K, symmetric where computed
  std::size_t chosen_index = 0;
  std::size_t chosen_m = 0;
  // Set when the data show y ties (discrete case) while the rule fields
  // candidates with gamma >= 0.5, whose growth is too fast for the
  // discrete-case guarantee.
  bool admissibility_warning = false;
};

// Candidate subsample sizes for a rule at sample size n >= 4, each clamped
// to [2, n - 1]. FixedPower and Cluster use floor(n^gamma) (deduplicated
// for the grid); BickelSakov uses ceil(q^j n) for j = 0, 1, ... down to
// m_floor exclusive, with the leading n clamped to n - 1.
std::vector<std::size_t> candidate_ms(const MSelectionRule& rule,
                                      std::size_t n);

// Selection logic on precomputed distances, separated for direct testing.
// bickel_sakov_choice takes the K-1 consecutive-pair distances and returns
// the smallest index attaining the minimum. cluster_choice takes the full
// K x K matrix and returns the smallest index minimizing the row sum.
std::size_t bickel_sakov_choice(const std::vector<double>& consecutive);
std::size_t cluster_choice(const std::vector<std::vector<double>>& distances);

// Both selectors build one bootstrap distribution per candidate m (using
// cfg.replicates, threads and retry cap; candidate j draws from seed
// derive_seed(cfg.seed, j); cfg.m is ignored) and pick per their rule.
SelectionTrace select_bickel_sakov(const PairedSample& sample,
                                   const MSelectionRule& rule,
                                   const BootstrapConfig& cfg);
SelectionTrace select_cluster(const PairedSample& sample,
                              const MSelectionRule& rule,
                              const BootstrapConfig& cfg);

// Dispatches on rule.kind; a fixed-power rule yields a single-candidate
// trace with no distances to compute.
SelectionTrace select_m(const PairedSample& sample, const MSelectionRule& rule,
                        const BootstrapConfig& cfg);

}  // namespace xiboot
