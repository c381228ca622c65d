#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "xiboot/bootstrap.hpp"
#include "xiboot/errors.hpp"
#include "xiboot/models.hpp"
#include "xiboot/xi.hpp"

using namespace xiboot;

namespace {

PairedSample distinct_sample(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  PairedSample s;
  s.xs = oracle::random_vector(gen, n);
  s.ys = oracle::random_vector(gen, n);
  return s;
}

}  // namespace

TEST_CASE("is_degenerate") {
  CHECK(is_degenerate({{1, 2, 3}, {1, 1, 1}}));
  CHECK_FALSE(is_degenerate({{1, 2, 3}, {1, 1, 2}}));
}

TEST_CASE("draw_subsample: m = n - 1 removes exactly one pair") {
  const auto sample = distinct_sample(12, 1);
  Rng rng(5);
  const auto sub = draw_subsample(sample, 11, rng);
  REQUIRE(sub.size() == 11);
  std::multiset<double> full(sample.xs.begin(), sample.xs.end());
  for (const double x : sub.xs) {
    const auto it = full.find(x);
    REQUIRE(it != full.end());
    full.erase(it);
  }
  CHECK(full.size() == 1);
}

TEST_CASE("draw_subsample: deterministic for a fixed seed") {
  const auto sample = distinct_sample(50, 2);
  Rng a(99), b(99);
  const auto sub_a = draw_subsample(sample, 20, a);
  const auto sub_b = draw_subsample(sample, 20, b);
  CHECK(sub_a.xs == sub_b.xs);
  CHECK(sub_a.ys == sub_b.ys);
}

TEST_CASE("draw_subsample: domain errors") {
  const auto sample = distinct_sample(5, 3);
  Rng rng(0);
  CHECK_THROWS_AS(draw_subsample(sample, 0, rng), invalid_input);
  CHECK_THROWS_AS(draw_subsample(sample, 5, rng), invalid_input);
  CHECK_THROWS_AS(draw_subsample(sample, 6, rng), invalid_input);
}

TEST_CASE("draw_subsample: m = 1 from n = 3 is uniform over pairs") {
  const PairedSample sample{{10, 20, 30}, {1, 2, 3}};
  Rng rng(4);
  std::map<double, int> counts;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    counts[draw_subsample(sample, 1, rng).xs[0]] += 1;
  }
  CHECK(counts.size() == 3);
  for (const auto& [x, count] : counts) {
    CHECK(std::fabs(count / static_cast<double>(draws) - 1.0 / 3) < 0.02);
  }
}

TEST_CASE("bootstrap_distribution: atoms are centered") {
  // constant x, distinct y
  PairedSample sample;
  for (int i = 0; i < 30; ++i) {
    sample.xs.push_back(1.0);
    sample.ys.push_back(i);
  }
  BootstrapConfig cfg;
  cfg.m = 7;
  cfg.replicates = 500;
  cfg.seed = 11;
  const auto dist = bootstrap_distribution(sample, cfg);
  REQUIRE(dist.atoms.size() == 500);
  CHECK(dist.m == 7);
  long double mean = 0.0L;
  for (const double a : dist.atoms) mean += a;
  CHECK(std::fabs(static_cast<double>(mean) / 500.0) < 1e-10);
}

TEST_CASE("bootstrap_distribution: config and sample errors") {
  const auto sample = distinct_sample(10, 4);
  BootstrapConfig cfg;
  cfg.m = 10;
  cfg.replicates = 10;
  CHECK_THROWS_AS(bootstrap_distribution(sample, cfg), invalid_input);
  cfg.m = 1;
  CHECK_THROWS_AS(bootstrap_distribution(sample, cfg), invalid_input);
  cfg.m = 3;
  cfg.replicates = 1;
  CHECK_THROWS_AS(bootstrap_distribution(sample, cfg), invalid_input);

  cfg.replicates = 10;
  PairedSample flat{{1, 2, 3, 4}, {5, 5, 5, 5}};
  CHECK_THROWS_AS(bootstrap_distribution(flat, cfg), degenerate_sample);
}

TEST_CASE("bootstrap_distribution: center matches exhaustive subset average") {
  // n = 6, m = 3: the conditional expectation is the average over all 20
  // subsets, computed here with the O(m^2) oracle.
  const PairedSample sample{{1, 2, 3, 4, 5, 6},
                            {3.1, 0.5, 2.2, 5.9, 1.7, 4.4}};
  const std::size_t m = 3;
  const auto all = oracle::subsets(6, m);
  std::vector<double> exact_values;
  for (const auto& subset : all) {
    std::vector<double> xs, ys;
    for (const auto idx : subset) {
      xs.push_back(sample.xs[idx]);
      ys.push_back(sample.ys[idx]);
    }
    exact_values.push_back(std::sqrt(static_cast<double>(m)) *
                           oracle::brute_force_xi(xs, ys));
  }
  double exact_mean = 0.0, exact_sq = 0.0;
  for (const double v : exact_values) {
    exact_mean += v;
    exact_sq += v * v;
  }
  exact_mean /= exact_values.size();
  exact_sq /= exact_values.size();
  const double population_sd = std::sqrt(exact_sq - exact_mean * exact_mean);

  BootstrapConfig cfg;
  cfg.m = m;
  cfg.replicates = 20000;
  cfg.seed = 21;
  const auto dist = bootstrap_distribution(sample, cfg);
  const double se = population_sd / std::sqrt(static_cast<double>(cfg.replicates));
  CHECK(std::fabs(dist.center - exact_mean) <= 3.0 * se + 1e-12);
}

TEST_CASE("bootstrap_distribution: byte-identical across thread counts") {
  const auto sample = distinct_sample(200, 8);
  BootstrapConfig cfg;
  cfg.m = 20;
  cfg.replicates = 100;
  cfg.seed = 77;
  cfg.threads = 1;
  const auto one = bootstrap_distribution(sample, cfg);
  cfg.threads = 8;
  const auto eight = bootstrap_distribution(sample, cfg);
  CHECK(one.atoms == eight.atoms);
  CHECK(one.center == eight.center);
}

TEST_CASE("bootstrap_distribution: degenerate redraws") {
  // Two distinct y values, many duplicates: small subsamples often land on
  // a constant-y draw and have to be replaced.
  PairedSample sample;
  for (int i = 0; i < 40; ++i) {
    sample.xs.push_back(i);
    sample.ys.push_back(i < 36 ? 0.0 : 1.0);
  }
  BootstrapConfig cfg;
  cfg.m = 2;
  cfg.replicates = 300;
  cfg.seed = 31;

  SUBCASE("with retries every replicate is valid") {
    const auto dist = bootstrap_distribution(sample, cfg);
    CHECK(dist.atoms.size() == 300);
    // a valid pair from {0, 1}-valued y has one of each, and xi on two
    // distinct points is exactly 0; so 300 zero atoms prove every
    // replicate was redrawn until non-degenerate
    CHECK(dist.center == 0.0);
    for (const double a : dist.atoms) CHECK(a == 0.0);
  }

  SUBCASE("with the cap at zero the first degenerate draw fails") {
    cfg.max_degenerate_retries = 0;
    CHECK_THROWS_AS(bootstrap_distribution(sample, cfg),
                    degeneracy_exhausted);
  }
}

TEST_CASE("bootstrap_variance: small cases and scaling") {
  BootstrapDistribution dist;
  dist.atoms = {1.0, 1.0, 1.0};
  CHECK(bootstrap_variance(dist) == 0.0);
  dist.atoms = {-1.0, 1.0};
  CHECK(bootstrap_variance(dist) == 2.0);
  dist.atoms = {0.5};
  CHECK_THROWS_AS(bootstrap_variance(dist), invalid_input);

  std::mt19937_64 gen(51);
  dist.atoms = oracle::random_vector(gen, 64, -1.0, 1.0);
  const double base = bootstrap_variance(dist);
  for (auto& a : dist.atoms) a *= -3.0;
  CHECK(bootstrap_variance(dist) ==
        doctest::Approx(9.0 * base).epsilon(1e-12));
}

TEST_CASE("confidence_interval: frozen quantile example") {
  const auto est = confidence_interval(0.2, 0.6, 100, 0.95);
  CHECK(std::fabs(est.ci_low - 0.082402) < 1e-5);
  CHECK(std::fabs(est.ci_high - 0.317598) < 1e-5);
  CHECK(est.z == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(est.sigma_star_sq == doctest::Approx(0.36));
}

TEST_CASE("confidence_interval: degenerate width and scaling") {
  const auto point = confidence_interval(0.4, 0.0, 50, 0.95);
  CHECK(point.ci_low == 0.4);
  CHECK(point.ci_high == 0.4);

  const auto n1 = confidence_interval(0.0, 1.0, 100, 0.95);
  const auto n4 = confidence_interval(0.0, 1.0, 400, 0.95);
  CHECK(n4.ci_high - n4.ci_low ==
        doctest::Approx(0.5 * (n1.ci_high - n1.ci_low)).epsilon(1e-12));

  CHECK_THROWS_AS(confidence_interval(0.0, 1.0, 100, 0.0), invalid_input);
  CHECK_THROWS_AS(confidence_interval(0.0, 1.0, 100, 1.0), invalid_input);
  CHECK_THROWS_AS(confidence_interval(0.0, 1.0, 0, 0.95), invalid_input);
  CHECK_THROWS_AS(confidence_interval(0.0, -0.1, 100, 0.95), invalid_input);
}

TEST_CASE("bootstrap_distribution: variance near table value at n = 10000") {
  // Gaussian rho = 0 data: the limiting variance of the normalized
  // statistic is 2/5, and the subsample variance estimates it.
  Rng model_rng(1001);
  const auto sample =
      generate_sample(ModelSpec::gaussian(0.0), 10000, model_rng);
  BootstrapConfig cfg;
  cfg.m = 100;  // sqrt(n)
  cfg.replicates = 2000;
  cfg.seed = 17;
  const auto dist = bootstrap_distribution(sample, cfg);
  CHECK(std::fabs(bootstrap_variance(dist) - 0.40) < 0.08);
}
