#pragma once

#include <cstddef>
#include <vector>

namespace xiboot {

// One-dimensional empirical distribution: equal weight 1/len on each atom.
// Atoms are sorted at construction; the CDF convention is right-continuous.
class EmpiricalDistribution {
 public:
  // Throws invalid_input if `atoms` is empty or contains non-finite values.
  explicit EmpiricalDistribution(std::vector<double> atoms);

  const std::vector<double>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  // F(x) = #(atoms <= x) / len.
  double cdf(double x) const;

 private:
  std::vector<double> atoms_;  // ascending
};

// sup_x |F_a(x) - F_b(x)|, by a merge scan over the sorted atom union that
// evaluates both CDFs at every point of discontinuity.
double kolmogorov_distance(const EmpiricalDistribution& a,
                           const EmpiricalDistribution& b);

// sup_x |F_a(x) - Phi(x / sigma)|, evaluating the empirical CDF at both
// one-sided limits of every atom. sigma > 0.
double kolmogorov_to_normal(const EmpiricalDistribution& a, double sigma);

// Wasserstein distance of order p >= 1. In one dimension this is the L_p
// distance between quantile functions: the sorted coupling for equal atom
// counts, exact piecewise-constant quantile integration otherwise.
double wasserstein_p(const EmpiricalDistribution& a,
                     const EmpiricalDistribution& b, double p);

}  // namespace xiboot
