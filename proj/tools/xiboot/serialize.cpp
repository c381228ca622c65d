#include "serialize.hpp"

#include <cmath>

#include "xiboot/errors.hpp"

namespace xiboot::cli {

nlohmann::ordered_json model_to_json(const ModelSpec& model) {
  nlohmann::ordered_json j;
  switch (model.family) {
    case ModelSpec::Family::kGaussian:
      j["family"] = "gaussian";
      j["rho"] = model.rho;
      break;
    case ModelSpec::Family::kStudentT:
      j["family"] = "t";
      j["nu"] = model.nu;
      j["rho"] = model.rho;
      break;
    case ModelSpec::Family::kPoissonMixture:
      j["family"] = "poisson";
      j["lambda"] = model.lambda;
      j["rho"] = model.rho;
      break;
  }
  return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "gaussian") {
    return ModelSpec::gaussian(j.at("rho").get<double>());
  }
  if (family == "t") {
    return ModelSpec::student_t(j.at("nu").get<double>(),
                                j.at("rho").get<double>());
  }
  if (family == "poisson") {
    return ModelSpec::poisson_mixture(j.at("lambda").get<double>(),
                                      j.at("rho").get<double>());
  }
  throw invalid_input("unknown model family '" + family + "'");
}

nlohmann::ordered_json rule_to_json(const MSelectionRule& rule) {
  nlohmann::ordered_json j;
  switch (rule.kind) {
    case MSelectionRule::Kind::kFixedPower:
      j["kind"] = "fixed";
      j["gamma"] = rule.gamma;
      break;
    case MSelectionRule::Kind::kBickelSakov:
      j["kind"] = "bickel-sakov";
      j["q"] = rule.q;
      j["m_floor"] = rule.m_floor;
      break;
    case MSelectionRule::Kind::kCluster:
      j["kind"] = "cluster";
      j["gammas"] = rule.gammas;
      break;
  }
  return j;
}

nlohmann::ordered_json trace_to_json(const SelectionTrace& trace) {
  nlohmann::ordered_json j;
  std::vector<std::size_t> ms;
  ms.reserve(trace.candidates.size());
  for (const auto& cand : trace.candidates) ms.push_back(cand.m);
  j["candidate_ms"] = ms;
  j["chosen_index"] = trace.chosen_index;
  j["chosen_m"] = trace.chosen_m;
  // NaN entries (distances that were never needed) serialize as null.
  j["distances"] = trace.distances;
  j["admissibility_warning"] = trace.admissibility_warning;
  return j;
}

nlohmann::ordered_json calibration_to_json(const CalibrationResult& truth) {
  nlohmann::ordered_json j;
  j["xi_hat"] = truth.xi_hat;
  j["xi_se"] = truth.xi_se;
  j["sigma_sq_hat"] = truth.sigma_sq_hat;
  j["sigma_sq_se"] = truth.sigma_sq_se;
  j["n_cal"] = truth.n_cal;
  j["M_cal"] = truth.M_cal;
  return j;
}

CalibrationResult calibration_from_json(const nlohmann::json& j) {
  CalibrationResult truth;
  truth.xi_hat = j.at("xi_hat").get<double>();
  truth.xi_se = j.at("xi_se").get<double>();
  truth.sigma_sq_hat = j.at("sigma_sq_hat").get<double>();
  truth.sigma_sq_se = j.at("sigma_sq_se").get<double>();
  truth.n_cal = j.at("n_cal").get<std::size_t>();
  truth.M_cal = j.at("M_cal").get<std::size_t>();
  return truth;
}

}  // namespace xiboot::cli
