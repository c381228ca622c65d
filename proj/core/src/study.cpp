#include "xiboot/study.hpp"

#include <cmath>
#include <optional>

#include "xiboot/errors.hpp"
#include "xiboot/parallel.hpp"
#include "xiboot/xi.hpp"

namespace xiboot {

namespace {

// Stream tags for the independent randomness a run needs.
enum RunStream : std::uint64_t {
  kSampleStream = 0,
  kFullXiStream = 1,
  kSelectionStream = 2,
};

}  // namespace

StudyReport run_study(const StudyConfig& cfg, const CalibrationResult& truth,
                      const RunEstimator& estimator) {
  validate(cfg.model);
  if (cfg.runs < 1) throw invalid_input("study: need at least one run");
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) {
    throw invalid_input("study: level must lie in (0, 1)");
  }
  if (!(truth.sigma_sq_hat >= 0.0)) {
    throw invalid_input("study: calibration has negative variance");
  }

  struct Slot {
    std::optional<StudyRun> record;
  };
  std::vector<Slot> slots(cfg.runs);

  parallel_for(cfg.runs, cfg.threads, [&](std::size_t i) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, i);
    try {
      Rng sample_rng(derive_seed(run_seed, kSampleStream));
      const PairedSample sample =
          generate_sample(cfg.model, cfg.n, sample_rng);
      const RunOutcome outcome = estimator(sample, run_seed);
      const BootstrapEstimate est = confidence_interval(
          outcome.xi_n, std::sqrt(outcome.sigma_star_sq), cfg.n, cfg.level);

      StudyRun record;
      record.run = i;
      record.xi_n = outcome.xi_n;
      record.chosen_m = outcome.chosen_m;
      record.sigma_star_sq = outcome.sigma_star_sq;
      record.ci_low = est.ci_low;
      record.ci_high = est.ci_high;
      record.covered =
          est.ci_low <= truth.xi_hat && truth.xi_hat <= est.ci_high;
      slots[i].record = record;
    } catch (const degenerate_sample&) {
      // excluded and counted below
    } catch (const degeneracy_exhausted&) {
      // excluded and counted below
    }
  });

  StudyReport report;
  long double sq_err = 0.0L;
  long double length = 0.0L;
  std::size_t covered = 0;
  for (const auto& slot : slots) {
    if (!slot.record) {
      ++report.failed_runs;
      continue;
    }
    report.records.push_back(*slot.record);
    const long double err = slot.record->sigma_star_sq - truth.sigma_sq_hat;
    sq_err += err * err;
    length += slot.record->ci_high - slot.record->ci_low;
    covered += slot.record->covered ? 1 : 0;
  }

  const std::size_t completed = report.records.size();
  if (completed == 0) {
    throw degeneracy_exhausted("study: every run failed as degenerate");
  }
  report.rmse = std::sqrt(
      static_cast<double>(sq_err / static_cast<long double>(completed)));
  report.rrmse = report.rmse / truth.sigma_sq_hat;
  report.coverage =
      static_cast<double>(covered) / static_cast<double>(completed);
  report.coverage_se =
      std::sqrt(report.coverage * (1.0 - report.coverage) /
                static_cast<double>(completed));
  report.mean_ci_length =
      static_cast<double>(length / static_cast<long double>(completed));
  return report;
}

StudyReport run_study(const StudyConfig& cfg, const CalibrationResult& truth) {
  const RunEstimator default_estimator =
      [&cfg](const PairedSample& sample, std::uint64_t run_seed) {
        Rng xi_rng(derive_seed(run_seed, kFullXiStream));
        RunOutcome outcome;
        outcome.xi_n = xi(sample, xi_rng);

        BootstrapConfig boot_cfg;
        boot_cfg.replicates = cfg.replicates;
        boot_cfg.seed = derive_seed(run_seed, kSelectionStream);
        boot_cfg.max_degenerate_retries = cfg.max_degenerate_retries;
        boot_cfg.threads = 1;  // parallelism lives at the run level
        const SelectionTrace trace = select_m(sample, cfg.rule, boot_cfg);
        outcome.sigma_star_sq = bootstrap_variance(
            trace.candidates[trace.chosen_index].distribution);
        outcome.chosen_m = trace.chosen_m;
        return outcome;
      };
  return run_study(cfg, truth, default_estimator);
}

}  // namespace xiboot
