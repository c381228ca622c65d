#include <doctest.h>

#include <cmath>

#include "xiboot/errors.hpp"
#include "xiboot/models.hpp"

using namespace xiboot;

namespace {

struct Moments {
  double mean_x, mean_y, var_x, var_y, corr;
};

Moments moments_of(const PairedSample& s) {
  const double n = static_cast<double>(s.size());
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sx += s.xs[i];
    sy += s.ys[i];
    sxx += s.xs[i] * s.xs[i];
    syy += s.ys[i] * s.ys[i];
    sxy += s.xs[i] * s.ys[i];
  }
  Moments m;
  m.mean_x = static_cast<double>(sx / n);
  m.mean_y = static_cast<double>(sy / n);
  m.var_x = static_cast<double>(sxx / n) - m.mean_x * m.mean_x;
  m.var_y = static_cast<double>(syy / n) - m.mean_y * m.mean_y;
  const double cov = static_cast<double>(sxy / n) - m.mean_x * m.mean_y;
  m.corr = cov / std::sqrt(m.var_x * m.var_y);
  return m;
}

}  // namespace

TEST_CASE("tau_from_rho: endpoints and inverse property") {
  CHECK(tau_from_rho(0.0) == 0.0);
  CHECK(tau_from_rho(1.0 / std::sqrt(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(tau_from_rho(1.0), invalid_input);
  CHECK_THROWS_AS(tau_from_rho(-0.1), invalid_input);

  for (int i = 1; i < 100; ++i) {
    const double rho = i / 100.0;
    const double tau = tau_from_rho(rho);
    CHECK(tau >= 0.0);
    CHECK(tau < 1.0);
    const double back = tau / std::sqrt(tau * tau + (1.0 - tau) * (1.0 - tau));
    CHECK(std::fabs(back - rho) < 1e-12);
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(validate(ModelSpec::gaussian(1.0)), invalid_input);
  CHECK_THROWS_AS(validate(ModelSpec::gaussian(-1.0)), invalid_input);
  CHECK_THROWS_AS(validate(ModelSpec::student_t(0.0, 0.5)), invalid_input);
  CHECK_THROWS_AS(validate(ModelSpec::poisson_mixture(0.0, 0.5)), invalid_input);
  CHECK_THROWS_AS(validate(ModelSpec::poisson_mixture(2.0, -0.2)), invalid_input);
  CHECK_NOTHROW(validate(ModelSpec::gaussian(-0.99)));
  CHECK_NOTHROW(validate(ModelSpec::student_t(3.0, 0.5)));
  CHECK_NOTHROW(validate(ModelSpec::poisson_mixture(2.0, 0.9)));

  Rng rng(0);
  CHECK_THROWS_AS(generate_sample(ModelSpec::gaussian(0.0), 1, rng),
                  invalid_input);
}

TEST_CASE("gaussian generator: correlation and marginals") {
  Rng rng(101);
  const auto s = generate_sample(ModelSpec::gaussian(0.9), 100000, rng);
  const auto m = moments_of(s);
  CHECK(std::fabs(m.corr - 0.9) < 0.01);
  CHECK(std::fabs(m.mean_x) < 0.02);
  CHECK(std::fabs(m.mean_y) < 0.02);
  CHECK(std::fabs(m.var_x - 1.0) < 0.02);
  CHECK(std::fabs(m.var_y - 1.0) < 0.02);
}

TEST_CASE("t generator: heavy tails with variance nu / (nu - 2)") {
  Rng rng(103);
  const auto s = generate_sample(ModelSpec::student_t(3.0, 0.5), 100000, rng);
  const auto m = moments_of(s);
  // the marginal variance of t(3) is 3; the fourth moment is infinite, so
  // the empirical variance is noisy and the band is wide
  CHECK(std::fabs(m.var_x - 3.0) / 3.0 < 0.2);
  CHECK(std::fabs(m.var_y - 3.0) / 3.0 < 0.2);
  // a tail beyond 6 sd would be invisible for a Gaussian at this n
  int far = 0;
  for (const double x : s.xs) far += std::fabs(x) > 6.0 ? 1 : 0;
  CHECK(far > 10);
}

TEST_CASE("poisson mixture generator: correlation by construction") {
  Rng rng(107);
  const auto s =
      generate_sample(ModelSpec::poisson_mixture(2.0, 0.5), 100000, rng);
  const auto m = moments_of(s);
  CHECK(std::fabs(m.corr - 0.5) < 0.01);
  CHECK(std::fabs(m.mean_x - 2.0) < 0.03);
  CHECK(std::fabs(m.var_x - 2.0) < 0.05);
}

TEST_CASE("poisson mixture at rho = 0: y is an independent copy") {
  Rng rng(109);
  const auto s =
      generate_sample(ModelSpec::poisson_mixture(2.0, 0.0), 100000, rng);
  const auto m = moments_of(s);
  CHECK(std::fabs(m.corr) < 0.01);
  // tau = 0 makes y exactly the z draw: integer-valued
  for (std::size_t i = 0; i < 100; ++i) {
    CHECK(s.ys[i] == std::floor(s.ys[i]));
  }
}

TEST_CASE("generators are deterministic per seed") {
  for (const auto model :
       {ModelSpec::gaussian(0.5), ModelSpec::student_t(3.0, 0.5),
        ModelSpec::poisson_mixture(2.0, 0.5)}) {
    Rng a(5), b(5);
    const auto sa = generate_sample(model, 100, a);
    const auto sb = generate_sample(model, 100, b);
    CHECK(sa.xs == sb.xs);
    CHECK(sa.ys == sb.ys);
  }
}
