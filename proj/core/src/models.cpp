#include "xiboot/models.hpp"

#include <cmath>

#include "xiboot/errors.hpp"

namespace xiboot {

ModelSpec ModelSpec::gaussian(double rho) {
  ModelSpec model;
  model.family = Family::kGaussian;
  model.rho = rho;
  return model;
}

ModelSpec ModelSpec::student_t(double nu, double rho) {
  ModelSpec model;
  model.family = Family::kStudentT;
  model.nu = nu;
  model.rho = rho;
  return model;
}

ModelSpec ModelSpec::poisson_mixture(double lambda, double rho) {
  ModelSpec model;
  model.family = Family::kPoissonMixture;
  model.lambda = lambda;
  model.rho = rho;
  return model;
}

void validate(const ModelSpec& model) {
  switch (model.family) {
    case ModelSpec::Family::kGaussian:
      if (!(model.rho > -1.0 && model.rho < 1.0)) {
        throw invalid_input("gaussian model: rho must lie in (-1, 1)");
      }
      break;
    case ModelSpec::Family::kStudentT:
      if (!(model.rho > -1.0 && model.rho < 1.0)) {
        throw invalid_input("t model: rho must lie in (-1, 1)");
      }
      if (!(model.nu > 0.0)) {
        throw invalid_input("t model: nu must be positive");
      }
      break;
    case ModelSpec::Family::kPoissonMixture:
      if (!(model.rho >= 0.0 && model.rho < 1.0)) {
        throw invalid_input("poisson model: rho must lie in [0, 1)");
      }
      if (!(model.lambda > 0.0)) {
        throw invalid_input("poisson model: lambda must be positive");
      }
      break;
  }
}

double tau_from_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw invalid_input("tau_from_rho: rho must lie in [0, 1)");
  }
  if (rho == 0.0) return 0.0;
  const double ratio = rho / std::sqrt(1.0 - rho * rho);
  return ratio / (1.0 + ratio);
}

PairedSample generate_sample(const ModelSpec& model, std::size_t n, Rng& rng) {
  validate(model);
  if (n < 2) throw invalid_input("generate_sample: n must be at least 2");

  PairedSample sample;
  sample.xs.resize(n);
  sample.ys.resize(n);

  switch (model.family) {
    case ModelSpec::Family::kGaussian: {
      const double cross = std::sqrt(1.0 - model.rho * model.rho);
      for (std::size_t k = 0; k < n; ++k) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        sample.xs[k] = z1;
        sample.ys[k] = model.rho * z1 + cross * z2;
      }
      break;
    }
    case ModelSpec::Family::kStudentT: {
      const double cross = std::sqrt(1.0 - model.rho * model.rho);
      for (std::size_t k = 0; k < n; ++k) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        // One chi-square divisor shared by both coordinates makes the
        // pair jointly t distributed.
        const double divisor =
            std::sqrt(rng.chi_square(model.nu) / model.nu);
        sample.xs[k] = z1 / divisor;
        sample.ys[k] = (model.rho * z1 + cross * z2) / divisor;
      }
      break;
    }
    case ModelSpec::Family::kPoissonMixture: {
      const double tau = tau_from_rho(model.rho);
      for (std::size_t k = 0; k < n; ++k) {
        const double x = static_cast<double>(rng.poisson(model.lambda));
        const double z = static_cast<double>(rng.poisson(model.lambda));
        sample.xs[k] = x;
        sample.ys[k] = tau * x + (1.0 - tau) * z;
      }
      break;
    }
  }
  return sample;
}

}  // namespace xiboot
