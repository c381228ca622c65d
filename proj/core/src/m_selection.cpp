#include "xiboot/m_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xiboot/errors.hpp"
#include "xiboot/metrics.hpp"

namespace xiboot {

std::vector<double> MSelectionRule::default_gamma_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.40 + 0.05 * i);
  return grid;
}

MSelectionRule MSelectionRule::fixed_power(double gamma) {
  MSelectionRule rule;
  rule.kind = Kind::kFixedPower;
  rule.gamma = gamma;
  return rule;
}

MSelectionRule MSelectionRule::bickel_sakov(double q, std::size_t m_floor) {
  MSelectionRule rule;
  rule.kind = Kind::kBickelSakov;
  rule.q = q;
  rule.m_floor = m_floor;
  return rule;
}

MSelectionRule MSelectionRule::cluster(std::vector<double> gammas) {
  MSelectionRule rule;
  rule.kind = Kind::kCluster;
  rule.gammas = std::move(gammas);
  return rule;
}

namespace {

std::size_t clamp_m(double value, std::size_t n) {
  if (value < 2.0) return 2;
  if (value > static_cast<double>(n - 1)) return n - 1;
  return static_cast<std::size_t>(value);
}

// floor(n^gamma) with a nudge so exact powers (100^0.5 and friends) do not
// land one below from rounding in pow.
std::size_t power_candidate(std::size_t n, double gamma) {
  return clamp_m(std::floor(std::pow(static_cast<double>(n), gamma) + 1e-9),
                 n);
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw invalid_input("m selection: gamma must lie in (0, 1)");
  }
}

}  // namespace

std::vector<std::size_t> candidate_ms(const MSelectionRule& rule,
                                      std::size_t n) {
  if (n < 4) throw invalid_input("candidate_ms: n must be at least 4");

  std::vector<std::size_t> ms;
  switch (rule.kind) {
    case MSelectionRule::Kind::kFixedPower: {
      require_gamma(rule.gamma);
      ms.push_back(power_candidate(n, rule.gamma));
      break;
    }
    case MSelectionRule::Kind::kCluster: {
      if (rule.gammas.empty()) {
        throw invalid_input("cluster rule: gamma grid is empty");
      }
      for (std::size_t i = 0; i < rule.gammas.size(); ++i) {
        require_gamma(rule.gammas[i]);
        if (i > 0 && !(rule.gammas[i] > rule.gammas[i - 1])) {
          throw invalid_input("cluster rule: gammas must be strictly increasing");
        }
        ms.push_back(power_candidate(n, rule.gammas[i]));
      }
      ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
      break;
    }
    case MSelectionRule::Kind::kBickelSakov: {
      if (!(rule.q > 0.0 && rule.q < 1.0)) {
        throw invalid_input("bickel-sakov rule: q must lie in (0, 1)");
      }
      if (rule.m_floor < 1) {
        throw invalid_input("bickel-sakov rule: m_floor must be >= 1");
      }
      double scale = static_cast<double>(n);
      for (int j = 0; j < 1024; ++j) {
        const auto raw = static_cast<std::size_t>(std::ceil(scale - 1e-9));
        if (raw <= rule.m_floor) break;
        const std::size_t m = clamp_m(static_cast<double>(raw), n);
        if (ms.empty() || ms.back() != m) ms.push_back(m);
        scale *= rule.q;
      }
      break;
    }
  }

  if (ms.empty()) {
    throw invalid_input("m selection: no candidates after clamping");
  }
  return ms;
}

std::size_t bickel_sakov_choice(const std::vector<double>& consecutive) {
  if (consecutive.empty()) {
    throw invalid_input("bickel_sakov_choice: no distances");
  }
  std::size_t best = 0;
  for (std::size_t j = 1; j < consecutive.size(); ++j) {
    if (consecutive[j] < consecutive[best]) best = j;
  }
  return best;
}

std::size_t cluster_choice(const std::vector<std::vector<double>>& distances) {
  if (distances.empty()) throw invalid_input("cluster_choice: no distances");
  std::size_t best = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < distances.size(); ++j) {
    double row_sum = 0.0;
    for (const double d : distances[j]) row_sum += d;
    if (row_sum < best_sum) {
      best_sum = row_sum;
      best = j;
    }
  }
  return best;
}

namespace {

constexpr double kNotComputed = std::numeric_limits<double>::quiet_NaN();

SelectionTrace build_candidates(const PairedSample& sample,
                                const std::vector<std::size_t>& ms,
                                const BootstrapConfig& cfg) {
  SelectionTrace trace;
  trace.candidates.reserve(ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j) {
    BootstrapConfig candidate_cfg = cfg;
    candidate_cfg.m = ms[j];
    candidate_cfg.seed = derive_seed(cfg.seed, j);
    trace.candidates.push_back(
        {ms[j], bootstrap_distribution(sample, candidate_cfg)});
  }
  trace.distances.assign(ms.size(), std::vector<double>(ms.size(), kNotComputed));
  return trace;
}

bool gamma_admissibility_warning(const PairedSample& sample,
                                 const MSelectionRule& rule) {
  bool fast_gamma = false;
  if (rule.kind == MSelectionRule::Kind::kFixedPower) {
    fast_gamma = rule.gamma >= 0.5;
  } else if (rule.kind == MSelectionRule::Kind::kCluster) {
    for (const double g : rule.gammas) fast_gamma |= g >= 0.5;
  }
  return fast_gamma && has_y_ties(sample);
}

}  // namespace

SelectionTrace select_bickel_sakov(const PairedSample& sample,
                                   const MSelectionRule& rule,
                                   const BootstrapConfig& cfg) {
  const auto ms = candidate_ms(rule, sample.size());
  if (ms.size() < 2) {
    throw invalid_input("bickel-sakov rule: need at least two candidates");
  }
  SelectionTrace trace = build_candidates(sample, ms, cfg);

  std::vector<EmpiricalDistribution> laws;
  laws.reserve(ms.size());
  for (const auto& cand : trace.candidates) {
    laws.emplace_back(cand.distribution.atoms);
  }

  std::vector<double> consecutive(ms.size() - 1);
  for (std::size_t j = 0; j + 1 < ms.size(); ++j) {
    const double d = kolmogorov_distance(laws[j], laws[j + 1]);
    consecutive[j] = d;
    trace.distances[j][j + 1] = d;
    trace.distances[j + 1][j] = d;
  }

  trace.chosen_index = bickel_sakov_choice(consecutive);
  trace.chosen_m = trace.candidates[trace.chosen_index].m;
  trace.admissibility_warning = gamma_admissibility_warning(sample, rule);
  return trace;
}

SelectionTrace select_cluster(const PairedSample& sample,
                              const MSelectionRule& rule,
                              const BootstrapConfig& cfg) {
  const auto ms = candidate_ms(rule, sample.size());
  SelectionTrace trace = build_candidates(sample, ms, cfg);

  std::vector<EmpiricalDistribution> laws;
  laws.reserve(ms.size());
  for (const auto& cand : trace.candidates) {
    laws.emplace_back(cand.distribution.atoms);
  }

  for (std::size_t j = 0; j < ms.size(); ++j) {
    trace.distances[j][j] = 0.0;
    for (std::size_t k = j + 1; k < ms.size(); ++k) {
      const double d = kolmogorov_distance(laws[j], laws[k]);
      trace.distances[j][k] = d;
      trace.distances[k][j] = d;
    }
  }

  trace.chosen_index = cluster_choice(trace.distances);
  trace.chosen_m = trace.candidates[trace.chosen_index].m;
  trace.admissibility_warning = gamma_admissibility_warning(sample, rule);
  return trace;
}

SelectionTrace select_m(const PairedSample& sample, const MSelectionRule& rule,
                        const BootstrapConfig& cfg) {
  switch (rule.kind) {
    case MSelectionRule::Kind::kBickelSakov:
      return select_bickel_sakov(sample, rule, cfg);
    case MSelectionRule::Kind::kCluster:
      return select_cluster(sample, rule, cfg);
    case MSelectionRule::Kind::kFixedPower: {
      const auto ms = candidate_ms(rule, sample.size());
      SelectionTrace trace = build_candidates(sample, ms, cfg);
      trace.distances[0][0] = 0.0;
      trace.chosen_index = 0;
      trace.chosen_m = ms[0];
      trace.admissibility_warning = gamma_admissibility_warning(sample, rule);
      return trace;
    }
  }
  throw invalid_input("select_m: unknown rule kind");
}

}  // namespace xiboot
