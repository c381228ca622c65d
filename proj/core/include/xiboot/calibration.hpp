#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "xiboot/models.hpp"
#include "xiboot/rng.hpp"
#include "xiboot/sample.hpp"

namespace xiboot {

// Simulated ground truth for a model: the population rank correlation and
// the limiting variance of the normalized statistic, estimated from M_cal
// independent copies of xi at sample size n_cal.
struct CalibrationResult {
  double xi_hat = 0.0;        // mean of the copies
  double sigma_sq_hat = 0.0;  // n_cal times their sample variance
  double xi_se = 0.0;
  double sigma_sq_se = 0.0;   // normal-theory sqrt(2 / (M_cal - 1)) * sigma_sq_hat
  std::size_t n_cal = 0;
  std::size_t M_cal = 0;
};

CalibrationResult calibrate_truth(const ModelSpec& model, std::size_t n_cal,
                                  std::size_t M_cal, std::uint64_t seed,
                                  unsigned threads = 1);

// Generator hook: produces one sample of the requested size from the given
// stream. Lets callers calibrate data sources beyond the built-in models.
using SampleGenerator =
    std::function<PairedSample(std::size_t n, Rng& rng)>;

CalibrationResult calibrate_truth(const SampleGenerator& generate,
                                  std::size_t n_cal, std::size_t M_cal,
                                  std::uint64_t seed, unsigned threads = 1);

}  // namespace xiboot
