#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "manifest.hpp"
#include "serialize.hpp"
#include "xiboot/xiboot.hpp"

namespace {

using nlohmann::ordered_json;
using namespace xiboot;
using namespace xiboot::cli;

// --truth file disagrees with the requested model.
class config_mismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stream tags, shared with the study runner so `xiboot xi` and
// `xiboot bootstrap` report the same xi_n for the same seed.
constexpr std::uint64_t kXiStream = 1;
constexpr std::uint64_t kSelectionStream = 2;
constexpr std::uint64_t kInlineCalibrationStream = 3;

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("XIBOOT_THREADS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0) {
      return static_cast<unsigned>(value);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

struct RuleFlags {
  std::string rule = "cluster";
  double gamma = 0.5;
  std::vector<double> gammas = MSelectionRule::default_gamma_grid();
  double q = 0.5;
  std::size_t m_floor = 3;
};

void add_rule_flags(CLI::App* cmd, RuleFlags& flags) {
  cmd->add_option("--rule", flags.rule, "m selection rule")
      ->check(CLI::IsMember({"fixed", "bickel-sakov", "cluster"}))
      ->capture_default_str();
  cmd->add_option("--gamma", flags.gamma,
                  "exponent for --rule fixed: m = floor(n^gamma)")
      ->capture_default_str();
  cmd->add_option("--gammas", flags.gammas,
                  "comma-separated exponent grid for --rule cluster")
      ->delimiter(',');
  cmd->add_option("--q", flags.q, "decay for --rule bickel-sakov")
      ->capture_default_str();
  cmd->add_option("--m-floor", flags.m_floor,
                  "smallest candidate (exclusive) for --rule bickel-sakov")
      ->capture_default_str();
}

MSelectionRule build_rule(const RuleFlags& flags) {
  if (flags.rule == "fixed") return MSelectionRule::fixed_power(flags.gamma);
  if (flags.rule == "bickel-sakov") {
    return MSelectionRule::bickel_sakov(flags.q, flags.m_floor);
  }
  return MSelectionRule::cluster(flags.gammas);
}

struct ModelFlags {
  std::string model = "gaussian";
  double rho = 0.0;
  double nu = 3.0;
  double lambda = 2.0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--model", flags.model, "data-generating model")
      ->check(CLI::IsMember({"gaussian", "t", "poisson"}))
      ->required();
  cmd->add_option("--rho", flags.rho, "correlation parameter")
      ->capture_default_str();
  cmd->add_option("--nu", flags.nu, "degrees of freedom for --model t")
      ->capture_default_str();
  cmd->add_option("--lambda", flags.lambda, "mean for --model poisson")
      ->capture_default_str();
}

ModelSpec build_model(const ModelFlags& flags) {
  if (flags.model == "gaussian") return ModelSpec::gaussian(flags.rho);
  if (flags.model == "t") return ModelSpec::student_t(flags.nu, flags.rho);
  return ModelSpec::poisson_mixture(flags.lambda, flags.rho);
}

bool models_match(const ModelSpec& a, const ModelSpec& b) {
  if (a.family != b.family) return false;
  switch (a.family) {
    case ModelSpec::Family::kGaussian:
      return a.rho == b.rho;
    case ModelSpec::Family::kStudentT:
      return a.rho == b.rho && a.nu == b.nu;
    case ModelSpec::Family::kPoissonMixture:
      return a.rho == b.rho && a.lambda == b.lambda;
  }
  return false;
}

std::size_t duplicate_count(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::size_t distinct = values.empty() ? 0 : 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] != values[i - 1]) ++distinct;
  }
  return values.size() - distinct;
}

void emit(const ordered_json& report) { std::cout << report.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// xi

struct XiOptions {
  std::string input;
  std::uint64_t seed = 42;
};

void run_xi(const XiOptions& opt) {
  const CsvReadResult csv = read_paired_csv(opt.input);
  validate(csv.sample);

  Rng rng(derive_seed(opt.seed, kXiStream));
  const double value = xi(csv.sample, rng);

  RunManifest manifest;
  manifest.command = "xi";
  manifest.parameters["input"] = opt.input;
  manifest.seed = opt.seed;
  manifest.input_digest = digest_file(opt.input);

  ordered_json report;
  report["xi"] = value;
  report["n"] = csv.sample.size();
  report["used_tie_formula"] = has_y_ties(csv.sample);
  report["x_tie_count"] = duplicate_count(csv.sample.xs);
  report["y_tie_count"] = duplicate_count(csv.sample.ys);
  report["manifest"] = to_json(manifest);
  emit(report);
}

// ---------------------------------------------------------------------------
// bootstrap

struct BootstrapOptions {
  std::string input;
  RuleFlags rule;
  std::size_t replicates = 2000;
  double level = 0.95;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::size_t max_retries = 1000;
};

void run_bootstrap(const BootstrapOptions& opt) {
  const CsvReadResult csv = read_paired_csv(opt.input);
  validate(csv.sample);
  const MSelectionRule rule = build_rule(opt.rule);

  Rng xi_rng(derive_seed(opt.seed, kXiStream));
  const double xi_n = xi(csv.sample, xi_rng);

  BootstrapConfig cfg;
  cfg.replicates = opt.replicates;
  cfg.seed = derive_seed(opt.seed, kSelectionStream);
  cfg.max_degenerate_retries = opt.max_retries;
  cfg.threads = resolve_threads(opt.threads);
  const SelectionTrace trace = select_m(csv.sample, rule, cfg);
  const double sigma_star_sq = bootstrap_variance(
      trace.candidates[trace.chosen_index].distribution);
  const BootstrapEstimate est = confidence_interval(
      xi_n, std::sqrt(sigma_star_sq), csv.sample.size(), opt.level);

  RunManifest manifest;
  manifest.command = "bootstrap";
  manifest.parameters["input"] = opt.input;
  manifest.parameters["rule"] = rule_to_json(rule);
  manifest.parameters["B"] = opt.replicates;
  manifest.parameters["level"] = opt.level;
  manifest.parameters["max_retries"] = opt.max_retries;
  manifest.seed = opt.seed;
  manifest.input_digest = digest_file(opt.input);

  ordered_json report;
  report["xi_n"] = xi_n;
  report["n"] = csv.sample.size();
  report["chosen_m"] = trace.chosen_m;
  report["sigma_star_sq"] = sigma_star_sq;
  report["sigma_star"] = std::sqrt(sigma_star_sq);
  report["ci_low"] = est.ci_low;
  report["ci_high"] = est.ci_high;
  report["level"] = est.level;
  report["z"] = est.z;
  report["centering"] = "in_run_monte_carlo_mean";
  report["selection"] = trace_to_json(trace);
  report["selection"]["rule"] = rule_to_json(rule);
  report["manifest"] = to_json(manifest);
  emit(report);
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateOptions {
  ModelFlags model;
  std::size_t n_cal = 20000;
  std::size_t M_cal = 5000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

ordered_json calibration_report(const ModelSpec& model,
                                const CalibrationResult& truth,
                                const RunManifest& manifest) {
  ordered_json report;
  report["model"] = model_to_json(model);
  const ordered_json cal = calibration_to_json(truth);
  for (const auto& [key, value] : cal.items()) report[key] = value;
  report["manifest"] = to_json(manifest);
  return report;
}

void run_calibrate(const CalibrateOptions& opt) {
  const ModelSpec model = build_model(opt.model);
  const CalibrationResult truth =
      calibrate_truth(model, opt.n_cal, opt.M_cal, opt.seed,
                      resolve_threads(opt.threads));

  RunManifest manifest;
  manifest.command = "calibrate";
  manifest.parameters["model"] = model_to_json(model);
  manifest.parameters["n_cal"] = opt.n_cal;
  manifest.parameters["M_cal"] = opt.M_cal;
  manifest.seed = opt.seed;

  emit(calibration_report(model, truth, manifest));
}

// ---------------------------------------------------------------------------
// study

struct StudyOptions {
  ModelFlags model;
  std::size_t n = 500;
  std::size_t runs = 1000;
  std::size_t replicates = 2000;
  RuleFlags rule;
  double level = 0.95;
  std::uint64_t seed = 42;
  std::string truth_path;
  std::string out = "study";
  unsigned threads = 0;
  std::size_t max_retries = 1000;
  std::size_t n_cal = 20000;
  std::size_t M_cal = 5000;
};

void write_records_csv(const std::string& path,
                       const std::vector<StudyRun>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "run,xi_n,chosen_m,sigma_star_sq,ci_low,ci_high,covered\n";
  for (const auto& r : records) {
    out << r.run << ',' << format_double(r.xi_n) << ',' << r.chosen_m << ','
        << format_double(r.sigma_star_sq) << ',' << format_double(r.ci_low)
        << ',' << format_double(r.ci_high) << ',' << (r.covered ? 1 : 0)
        << '\n';
  }
}

void run_study_cmd(const StudyOptions& opt) {
  const ModelSpec model = build_model(opt.model);
  const MSelectionRule rule = build_rule(opt.rule);
  const unsigned threads = resolve_threads(opt.threads);

  CalibrationResult truth;
  if (!opt.truth_path.empty()) {
    std::ifstream in(opt.truth_path);
    if (!in) throw std::runtime_error("cannot open '" + opt.truth_path + "'");
    nlohmann::json truth_json;
    in >> truth_json;
    const ModelSpec truth_model = model_from_json(truth_json.at("model"));
    if (!models_match(model, truth_model)) {
      throw config_mismatch("truth file '" + opt.truth_path +
                            "' was calibrated for a different model");
    }
    truth = calibration_from_json(truth_json);
  } else {
    std::cerr << "xiboot: no --truth given, calibrating inline (n_cal="
              << opt.n_cal << ", M_cal=" << opt.M_cal << ")\n";
    truth = calibrate_truth(model, opt.n_cal, opt.M_cal,
                            derive_seed(opt.seed, kInlineCalibrationStream),
                            threads);
  }

  StudyConfig cfg;
  cfg.model = model;
  cfg.n = opt.n;
  cfg.runs = opt.runs;
  cfg.replicates = opt.replicates;
  cfg.rule = rule;
  cfg.level = opt.level;
  cfg.seed = opt.seed;
  cfg.threads = threads;
  cfg.max_degenerate_retries = opt.max_retries;
  const StudyReport report = run_study(cfg, truth);

  RunManifest manifest;
  manifest.command = "study";
  manifest.parameters["model"] = model_to_json(model);
  manifest.parameters["n"] = opt.n;
  manifest.parameters["M"] = opt.runs;
  manifest.parameters["B"] = opt.replicates;
  manifest.parameters["rule"] = rule_to_json(rule);
  manifest.parameters["level"] = opt.level;
  manifest.parameters["max_retries"] = opt.max_retries;
  manifest.parameters["out"] = opt.out;
  if (!opt.truth_path.empty()) {
    manifest.parameters["truth"] = opt.truth_path;
    manifest.input_digest = digest_file(opt.truth_path);
  } else {
    manifest.parameters["truth"] = nullptr;
    manifest.parameters["n_cal"] = opt.n_cal;
    manifest.parameters["M_cal"] = opt.M_cal;
  }
  manifest.seed = opt.seed;

  const std::string csv_path = opt.out + ".csv";
  const std::string json_path = opt.out + ".json";
  write_records_csv(csv_path, report.records);

  ordered_json j;
  j["model"] = model_to_json(model);
  j["n"] = opt.n;
  j["M"] = opt.runs;
  j["B"] = opt.replicates;
  j["rule"] = rule_to_json(rule);
  j["level"] = opt.level;
  j["truth"] = calibration_to_json(truth);
  j["rmse"] = report.rmse;
  j["rrmse"] = report.rrmse;
  j["coverage"] = report.coverage;
  j["coverage_se"] = report.coverage_se;
  j["mean_ci_length"] = report.mean_ci_length;
  j["completed_runs"] = report.records.size();
  j["failed_runs"] = report.failed_runs;
  j["records_csv"] = csv_path;
  j["manifest"] = to_json(manifest);

  std::ofstream out_json(json_path, std::ios::binary);
  if (!out_json) throw std::runtime_error("cannot write '" + json_path + "'");
  out_json << j.dump(2) << "\n";
  emit(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chatterjee rank correlation with m-out-of-n bootstrap inference"};
  app.require_subcommand(1);

  XiOptions xi_opt;
  CLI::App* xi_cmd =
      app.add_subcommand("xi", "rank correlation of a two-column CSV");
  xi_cmd->add_option("input", xi_opt.input, "CSV file with x,y rows")
      ->required();
  xi_cmd->add_option("--seed", xi_opt.seed, "base seed (x-tie breaking)")
      ->capture_default_str();
  xi_cmd->callback([&] { run_xi(xi_opt); });

  BootstrapOptions boot_opt;
  CLI::App* boot_cmd = app.add_subcommand(
      "bootstrap", "variance estimate and confidence interval for a CSV");
  boot_cmd->add_option("input", boot_opt.input, "CSV file with x,y rows")
      ->required();
  add_rule_flags(boot_cmd, boot_opt.rule);
  boot_cmd->add_option("--B", boot_opt.replicates, "bootstrap replicates")
      ->capture_default_str();
  boot_cmd->add_option("--level", boot_opt.level, "confidence level")
      ->capture_default_str();
  boot_cmd->add_option("--seed", boot_opt.seed, "base seed")
      ->capture_default_str();
  boot_cmd->add_option("--threads", boot_opt.threads,
                       "worker threads (0 = XIBOOT_THREADS or all cores)");
  boot_cmd->add_option("--max-retries", boot_opt.max_retries,
                       "degenerate-subsample redraw cap per replicate")
      ->capture_default_str();
  boot_cmd->callback([&] { run_bootstrap(boot_opt); });

  CalibrateOptions cal_opt;
  CLI::App* cal_cmd = app.add_subcommand(
      "calibrate", "simulate ground truth (xi, sigma^2) for a model");
  add_model_flags(cal_cmd, cal_opt.model);
  cal_cmd->add_option("--n", cal_opt.n_cal, "calibration sample size")
      ->capture_default_str();
  cal_cmd->add_option("--M", cal_opt.M_cal, "calibration replications")
      ->capture_default_str();
  cal_cmd->add_option("--seed", cal_opt.seed, "base seed")
      ->capture_default_str();
  cal_cmd->add_option("--threads", cal_opt.threads,
                      "worker threads (0 = XIBOOT_THREADS or all cores)");
  cal_cmd->callback([&] { run_calibrate(cal_opt); });

  StudyOptions study_opt;
  CLI::App* study_cmd = app.add_subcommand(
      "study", "Monte Carlo coverage study against calibrated truth");
  add_model_flags(study_cmd, study_opt.model);
  study_cmd->add_option("--n", study_opt.n, "sample size per run")
      ->capture_default_str();
  study_cmd->add_option("--M", study_opt.runs, "simulation runs")
      ->capture_default_str();
  study_cmd->add_option("--B", study_opt.replicates, "bootstrap replicates")
      ->capture_default_str();
  add_rule_flags(study_cmd, study_opt.rule);
  study_cmd->add_option("--level", study_opt.level, "confidence level")
      ->capture_default_str();
  study_cmd->add_option("--seed", study_opt.seed, "base seed")
      ->capture_default_str();
  study_cmd->add_option("--truth", study_opt.truth_path,
                        "calibration JSON from `xiboot calibrate`");
  study_cmd->add_option("--out", study_opt.out,
                        "output prefix for <out>.csv and <out>.json")
      ->capture_default_str();
  study_cmd->add_option("--threads", study_opt.threads,
                        "worker threads (0 = XIBOOT_THREADS or all cores)");
  study_cmd->add_option("--max-retries", study_opt.max_retries,
                        "degenerate-subsample redraw cap per replicate")
      ->capture_default_str();
  study_cmd->add_option("--n-cal", study_opt.n_cal,
                        "inline calibration sample size (no --truth)")
      ->capture_default_str();
  study_cmd->add_option("--M-cal", study_opt.M_cal,
                        "inline calibration replications (no --truth)")
      ->capture_default_str();
  study_cmd->callback([&] { run_study_cmd(study_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const config_mismatch& e) {
    std::cerr << "xiboot: " << e.what() << "\n";
    return 4;
  } catch (const degeneracy_exhausted& e) {
    std::cerr << "xiboot: " << e.what() << "\n";
    return 3;
  } catch (const degenerate_sample& e) {
    std::cerr << "xiboot: " << e.what() << "\n";
    return 2;
  } catch (const CsvError& e) {
    std::cerr << "xiboot: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "xiboot: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
