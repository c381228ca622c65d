#pragma once

#include <cstddef>

#include "xiboot/rng.hpp"
#include "xiboot/sample.hpp"

namespace xiboot {

// Data-generating models for the simulation studies.
struct ModelSpec {
  enum class Family { kGaussian, kStudentT, kPoissonMixture };

  Family family = Family::kGaussian;
  double rho = 0.0;     // correlation; (-1, 1) for the continuous models,
                        // [0, 1) for the Poisson mixture
  double nu = 3.0;      // t degrees of freedom, > 0
  double lambda = 2.0;  // Poisson mean, > 0

  static ModelSpec gaussian(double rho);
  static ModelSpec student_t(double nu, double rho);
  static ModelSpec poisson_mixture(double lambda, double rho);
};

// Throws invalid_input if the parameters are outside their domains.
void validate(const ModelSpec& model);

// Mixture weight tau in [0, 1) giving Corr(X, Y) = rho in the Poisson
// mixture Y = tau X + (1 - tau) Z: the unique solution of
// rho = tau / sqrt(tau^2 + (1 - tau)^2). rho in [0, 1).
double tau_from_rho(double rho);

// Draws n iid pairs. Gaussian: standard bivariate normal with correlation
// rho. StudentT: the same normal vector divided by a shared sqrt(U / nu)
// with U chi-square(nu), which is what makes the pair jointly t. Poisson
// mixture: X ~ Poisson(lambda), Z an independent copy,
// Y = tau X + (1 - tau) Z.
PairedSample generate_sample(const ModelSpec& model, std::size_t n, Rng& rng);

}  // namespace xiboot
