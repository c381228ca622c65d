#pragma once

namespace xiboot {

// Standard normal CDF, erf-based; absolute error well below 1e-12.
double standard_normal_cdf(double x);

// Standard normal quantile for p in (0, 1): rational initial approximation
// polished by one Halley step, absolute error below 1e-9. Throws
// invalid_input outside (0, 1).
double standard_normal_quantile(double p);

}  // namespace xiboot
