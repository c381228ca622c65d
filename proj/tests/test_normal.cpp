#include <doctest.h>

#include <cmath>

#include "xiboot/errors.hpp"
#include "xiboot/normal.hpp"

using namespace xiboot;

// Reference values frozen from an independent high-precision implementation.
TEST_CASE("standard_normal_cdf: frozen reference values") {
  const struct {
    double x, phi;
  } cases[] = {
      {0.0, 0.5},
      {0.5, 0.6914624612740131},
      {1.0, 0.8413447460685429},
      {1.959963984540054, 0.975},
      {-2.5, 0.006209665325776132},
      {3.0, 0.9986501019683699},
      {-4.0, 3.167124183311986e-05},
      {6.0, 0.9999999990134123},
  };
  for (const auto& c : cases) {
    CHECK(std::fabs(standard_normal_cdf(c.x) - c.phi) < 1e-12);
  }
}

TEST_CASE("standard_normal_quantile: frozen reference values") {
  const struct {
    double p, z;
  } cases[] = {
      {0.5, 0.0},
      {0.6, 0.2533471031357997},
      {0.75, 0.6744897501960817},
      {0.9, 1.2815515655446004},
      {0.95, 1.6448536269514722},
      {0.975, 1.959963984540054},
      {0.99, 2.3263478740408408},
      {0.995, 2.5758293035489004},
      {0.999, 3.090232306167813},
      {0.9999, 3.719016485455709},
      {0.0001, -3.7190164854556804},
      {0.02425, -1.972961051311885},  // rational-piece boundary
      {0.3, -0.5244005127080409},
  };
  for (const auto& c : cases) {
    CHECK(std::fabs(standard_normal_quantile(c.p) - c.z) < 1e-9);
  }
}

TEST_CASE("standard_normal_quantile: inverse of the CDF") {
  for (double p = 0.001; p < 0.9995; p += 0.0137) {
    const double x = standard_normal_quantile(p);
    CHECK(std::fabs(standard_normal_cdf(x) - p) < 1e-12);
  }
}

TEST_CASE("standard_normal_quantile: domain") {
  CHECK_THROWS_AS(standard_normal_quantile(0.0), invalid_input);
  CHECK_THROWS_AS(standard_normal_quantile(1.0), invalid_input);
  CHECK_THROWS_AS(standard_normal_quantile(-0.3), invalid_input);
  CHECK_THROWS_AS(standard_normal_quantile(1.7), invalid_input);
}
