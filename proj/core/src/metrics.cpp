#include "xiboot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "xiboot/errors.hpp"
#include "xiboot/normal.hpp"

namespace xiboot {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw invalid_input("empirical distribution: no atoms");
  }
  for (const double a : atoms_) {
    if (!std::isfinite(a)) {
      throw invalid_input("empirical distribution: non-finite atom");
    }
  }
  std::sort(atoms_.begin(), atoms_.end());
}

double EmpiricalDistribution::cdf(double x) const {
  const auto le =
      std::upper_bound(atoms_.begin(), atoms_.end(), x) - atoms_.begin();
  return static_cast<double>(le) / static_cast<double>(atoms_.size());
}

double kolmogorov_distance(const EmpiricalDistribution& a,
                           const EmpiricalDistribution& b) {
  const auto& av = a.atoms();
  const auto& bv = b.atoms();
  const double na = static_cast<double>(av.size());
  const double nb = static_cast<double>(bv.size());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  // The difference of two right-continuous step functions is constant
  // between discontinuities, so scanning the merged atom values visits
  // every value the difference takes.
  while (i < av.size() || j < bv.size()) {
    double v;
    if (i == av.size()) {
      v = bv[j];
    } else if (j == bv.size()) {
      v = av[i];
    } else {
      v = std::min(av[i], bv[j]);
    }
    while (i < av.size() && av[i] == v) ++i;
    while (j < bv.size() && bv[j] == v) ++j;
    sup = std::max(
        sup, std::fabs(static_cast<double>(i) / na -
                       static_cast<double>(j) / nb));
  }
  return sup;
}

double kolmogorov_to_normal(const EmpiricalDistribution& a, double sigma) {
  if (!(sigma > 0.0)) {
    throw invalid_input("kolmogorov_to_normal: sigma must be positive");
  }
  const auto& av = a.atoms();
  const double n = static_cast<double>(av.size());
  double sup = 0.0;
  std::size_t i = 0;
  // Against a continuous CDF the sup is attained at an atom, approached
  // from the left or from the right; check both one-sided limits.
  while (i < av.size()) {
    std::size_t j = i;
    while (j < av.size() && av[j] == av[i]) ++j;
    const double phi = standard_normal_cdf(av[i] / sigma);
    sup = std::max(sup, std::fabs(static_cast<double>(i) / n - phi));
    sup = std::max(sup, std::fabs(static_cast<double>(j) / n - phi));
    i = j;
  }
  return sup;
}

double wasserstein_p(const EmpiricalDistribution& a,
                     const EmpiricalDistribution& b, double p) {
  if (!(p >= 1.0)) throw invalid_input("wasserstein_p: order p must be >= 1");
  const auto& av = a.atoms();
  const auto& bv = b.atoms();

  if (av.size() == bv.size()) {
    // Sorted coupling is optimal in one dimension.
    long double acc = 0.0L;
    for (std::size_t i = 0; i < av.size(); ++i) {
      acc += std::pow(std::fabs(av[i] - bv[i]), p);
    }
    acc /= static_cast<long double>(av.size());
    return static_cast<double>(std::pow(static_cast<double>(acc), 1.0 / p));
  }

  // Unequal sizes: integrate |F_a^{-1}(u) - F_b^{-1}(u)|^p exactly over the
  // piecewise-constant quantile functions. Segment boundaries are handled
  // as integer multiples of 1 / (na nb) to avoid tie-ordering issues.
  const std::uint64_t na = av.size();
  const std::uint64_t nb = bv.size();
  const long double total = static_cast<long double>(na) * nb;
  std::uint64_t pos = 0;  // position in units of 1 / (na nb)
  std::size_t ia = 0, ib = 0;
  long double acc = 0.0L;
  while (ia < na && ib < nb) {
    const std::uint64_t next_a = (ia + 1) * nb;
    const std::uint64_t next_b = (ib + 1) * na;
    const std::uint64_t seg_end = std::min(next_a, next_b);
    acc += static_cast<long double>(seg_end - pos) / total *
           std::pow(std::fabs(av[ia] - bv[ib]), p);
    pos = seg_end;
    if (seg_end == next_a) ++ia;
    if (seg_end == next_b) ++ib;
  }
  return static_cast<double>(std::pow(static_cast<double>(acc), 1.0 / p));
}

}  // namespace xiboot
