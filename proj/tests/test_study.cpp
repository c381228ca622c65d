#include <doctest.h>

#include <cmath>

#include "xiboot/errors.hpp"
#include "xiboot/study.hpp"
#include "xiboot/xi.hpp"

using namespace xiboot;

namespace {

CalibrationResult fake_truth(double xi_hat, double sigma_sq) {
  CalibrationResult truth;
  truth.xi_hat = xi_hat;
  truth.sigma_sq_hat = sigma_sq;
  truth.n_cal = 1000;
  truth.M_cal = 1000;
  return truth;
}

StudyConfig small_config() {
  StudyConfig cfg;
  cfg.model = ModelSpec::gaussian(0.0);
  cfg.n = 100;
  cfg.runs = 20;
  cfg.replicates = 100;
  cfg.rule = MSelectionRule::fixed_power(0.5);
  cfg.level = 0.95;
  cfg.seed = 404;
  return cfg;
}

}  // namespace

TEST_CASE("run_study: stubbed estimator pins the aggregates") {
  const auto truth = fake_truth(0.0, 0.40);
  StudyConfig cfg = small_config();

  const RunEstimator stub = [&truth](const PairedSample& sample,
                                     std::uint64_t run_seed) {
    Rng rng(derive_seed(run_seed, 1));
    return RunOutcome{xi(sample, rng), truth.sigma_sq_hat, 7};
  };
  const auto report = run_study(cfg, truth, stub);

  CHECK(report.rmse == 0.0);
  CHECK(report.rrmse == 0.0);
  CHECK(report.failed_runs == 0);
  REQUIRE(report.records.size() == cfg.runs);
  for (const auto& r : report.records) {
    CHECK(r.chosen_m == 7);
    CHECK(r.sigma_star_sq == truth.sigma_sq_hat);
    // coverage is purely the CI formula: endpoints straddle xi_n by
    // construction and the flag reflects the truth check
    CHECK(r.ci_low <= r.xi_n);
    CHECK(r.xi_n <= r.ci_high);
    CHECK(r.covered == (r.ci_low <= 0.0 && 0.0 <= r.ci_high));
  }
  CHECK(report.coverage >= 0.0);
  CHECK(report.coverage <= 1.0);
  CHECK(report.mean_ci_length > 0.0);
}

TEST_CASE("run_study: single run reduces to one record") {
  const auto truth = fake_truth(0.0, 0.40);
  StudyConfig cfg = small_config();
  cfg.runs = 1;
  const auto report = run_study(cfg, truth);
  REQUIRE(report.records.size() == 1);
  CHECK(report.rmse ==
        doctest::Approx(std::fabs(report.records[0].sigma_star_sq - 0.40))
            .epsilon(1e-12));
  CHECK(report.coverage == (report.records[0].covered ? 1.0 : 0.0));
}

TEST_CASE("run_study: rrmse is recomputable from the records") {
  const auto truth = fake_truth(0.0, 0.40);
  StudyConfig cfg = small_config();
  const auto report = run_study(cfg, truth);
  REQUIRE(report.records.size() == cfg.runs);

  long double sq = 0.0L;
  std::size_t covered = 0;
  long double length = 0.0L;
  for (const auto& r : report.records) {
    const long double err = r.sigma_star_sq - truth.sigma_sq_hat;
    sq += err * err;
    covered += r.covered ? 1 : 0;
    length += r.ci_high - r.ci_low;
  }
  const double rmse =
      std::sqrt(static_cast<double>(sq / static_cast<long double>(cfg.runs)));
  CHECK(report.rmse == doctest::Approx(rmse).epsilon(1e-12));
  CHECK(report.rrmse == doctest::Approx(rmse / 0.40).epsilon(1e-12));
  CHECK(report.coverage ==
        doctest::Approx(covered / static_cast<double>(cfg.runs)));
  CHECK(report.mean_ci_length ==
        doctest::Approx(static_cast<double>(length) / cfg.runs));
  CHECK(report.coverage_se ==
        doctest::Approx(std::sqrt(report.coverage * (1 - report.coverage) /
                                  static_cast<double>(cfg.runs))));
}

TEST_CASE("run_study: deterministic across thread counts") {
  const auto truth = fake_truth(0.0, 0.40);
  StudyConfig cfg = small_config();
  cfg.threads = 1;
  const auto one = run_study(cfg, truth);
  cfg.threads = 4;
  const auto four = run_study(cfg, truth);
  REQUIRE(one.records.size() == four.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    CHECK(one.records[i].xi_n == four.records[i].xi_n);
    CHECK(one.records[i].sigma_star_sq == four.records[i].sigma_star_sq);
    CHECK(one.records[i].ci_low == four.records[i].ci_low);
    CHECK(one.records[i].chosen_m == four.records[i].chosen_m);
  }
  CHECK(one.rmse == four.rmse);
  CHECK(one.coverage == four.coverage);
}

TEST_CASE("run_study: failed runs are excluded and counted") {
  // Tiny Poisson samples with a minuscule mean are frequently all-zero in
  // y, which the run records as a failure.
  const auto truth = fake_truth(0.0, 0.46);
  StudyConfig cfg;
  cfg.model = ModelSpec::poisson_mixture(0.05, 0.0);
  cfg.n = 4;
  cfg.runs = 60;
  cfg.replicates = 50;
  cfg.rule = MSelectionRule::fixed_power(0.5);
  cfg.seed = 11;
  cfg.max_degenerate_retries = 5;
  const auto report = run_study(cfg, truth);
  CHECK(report.failed_runs > 0);
  CHECK(report.records.size() + report.failed_runs == cfg.runs);
}

TEST_CASE("run_study: no failures for gaussian data at n >= 100") {
  const auto truth = fake_truth(0.0, 0.40);
  StudyConfig cfg = small_config();
  const auto report = run_study(cfg, truth);
  CHECK(report.failed_runs == 0);
}

TEST_CASE("run_study: config validation") {
  const auto truth = fake_truth(0.0, 0.40);
  StudyConfig cfg = small_config();
  cfg.runs = 0;
  CHECK_THROWS_AS(run_study(cfg, truth), invalid_input);
  cfg = small_config();
  cfg.level = 1.0;
  CHECK_THROWS_AS(run_study(cfg, truth), invalid_input);
}
