#include "xiboot/calibration.hpp"

#include <cmath>
#include <string>

#include "xiboot/errors.hpp"
#include "xiboot/parallel.hpp"
#include "xiboot/xi.hpp"

namespace xiboot {

namespace {

constexpr std::size_t kMaxDegenerateRedraws = 1000;

}  // namespace

CalibrationResult calibrate_truth(const SampleGenerator& generate,
                                  std::size_t n_cal, std::size_t M_cal,
                                  std::uint64_t seed, unsigned threads) {
  if (n_cal < 2) throw invalid_input("calibrate: n_cal must be at least 2");
  if (M_cal < 2) throw invalid_input("calibrate: M_cal must be at least 2");

  std::vector<double> copies(M_cal);
  parallel_for(M_cal, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    for (std::size_t attempt = 0;; ++attempt) {
      const PairedSample sample = generate(n_cal, rng);
      if (!is_degenerate(sample)) {
        copies[i] = xi(sample, rng);
        return;
      }
      if (attempt == kMaxDegenerateRedraws) {
        throw degeneracy_exhausted("calibrate: copy " + std::to_string(i) +
                                   " kept drawing degenerate samples");
      }
    }
  });

  long double mean = 0.0L;
  for (const double v : copies) mean += v;
  mean /= static_cast<long double>(M_cal);
  long double ss = 0.0L;
  for (const double v : copies) {
    const long double d = v - mean;
    ss += d * d;
  }
  const double variance =
      static_cast<double>(ss / static_cast<long double>(M_cal - 1));

  CalibrationResult result;
  result.n_cal = n_cal;
  result.M_cal = M_cal;
  result.xi_hat = static_cast<double>(mean);
  result.sigma_sq_hat = static_cast<double>(n_cal) * variance;
  result.xi_se = std::sqrt(variance / static_cast<double>(M_cal));
  result.sigma_sq_se =
      result.sigma_sq_hat * std::sqrt(2.0 / static_cast<double>(M_cal - 1));
  return result;
}

CalibrationResult calibrate_truth(const ModelSpec& model, std::size_t n_cal,
                                  std::size_t M_cal, std::uint64_t seed,
                                  unsigned threads) {
  validate(model);
  return calibrate_truth(
      [&model](std::size_t n, Rng& rng) {
        return generate_sample(model, n, rng);
      },
      n_cal, M_cal, seed, threads);
}

}  // namespace xiboot
