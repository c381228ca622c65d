#include "xiboot/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "xiboot/errors.hpp"
#include "xiboot/normal.hpp"
#include "xiboot/parallel.hpp"
#include "xiboot/xi.hpp"

namespace xiboot {

namespace {

// Open-addressing set sized for Floyd's algorithm; keys are indices below
// n, so the all-ones word can serve as the empty slot.
class IndexSet {
 public:
  explicit IndexSet(std::size_t capacity) {
    std::size_t size = 16;
    while (size < 2 * capacity) size <<= 1;
    mask_ = size - 1;
    slots_.assign(size, kEmpty);
  }

  void reset() { std::fill(slots_.begin(), slots_.end(), kEmpty); }

  bool insert(std::uint64_t key) {
    std::size_t at = static_cast<std::size_t>(mix64(key)) & mask_;
    for (;;) {
      if (slots_[at] == kEmpty) {
        slots_[at] = key;
        return true;
      }
      if (slots_[at] == key) return false;
      at = (at + 1) & mask_;
    }
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  std::vector<std::uint64_t> slots_;
  std::size_t mask_ = 0;
};

// Floyd's algorithm: a uniform m-subset of {0, ..., n-1} in O(m) expected
// time, returned sorted.
void floyd_sorted_indices(std::size_t n, std::size_t m, Rng& rng,
                          IndexSet& seen, std::vector<std::uint64_t>& out) {
  seen.reset();
  out.clear();
  for (std::uint64_t j = n - m; j < n; ++j) {
    const std::uint64_t t = rng.uniform_below(j + 1);
    if (seen.insert(t)) {
      out.push_back(t);
    } else {
      seen.insert(j);
      out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
}

// The sample pre-arranged by ascending x, which every subsample inherits:
// a sorted index subset is already in x order, so replicates skip the
// x sort entirely.
struct SortedSampleView {
  std::vector<double> ys_by_x;
  std::vector<std::uint32_t> block;  // equal-x block id per position
  bool has_x_ties = false;
};

SortedSampleView make_sorted_view(const PairedSample& sample) {
  const std::size_t n = sample.size();
  std::vector<std::pair<double, std::size_t>> by_x(n);
  for (std::size_t i = 0; i < n; ++i) by_x[i] = {sample.xs[i], i};
  std::sort(by_x.begin(), by_x.end());

  SortedSampleView view;
  view.ys_by_x.resize(n);
  view.block.resize(n);
  std::uint32_t block_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      if (by_x[i].first != by_x[i - 1].first) {
        ++block_id;
      } else {
        view.has_x_ties = true;
      }
    }
    view.ys_by_x[i] = sample.ys[by_x[i].second];
    view.block[i] = block_id;
  }
  return view;
}

// Per-replicate scratch; reused across redraws.
struct ReplicateScratch {
  std::vector<std::uint64_t> indices;
  std::vector<double> y_sub;
  std::vector<std::pair<double, std::uint32_t>> by_y;
  std::vector<std::int64_t> ranks;
};

// Rank correlation of the subsample at the given sorted positions.
// Returns false when the draw is degenerate (all y equal).
bool xi_of_positions(const SortedSampleView& view, ReplicateScratch& s,
                     Rng& rng, double* out) {
  const std::size_t m = s.indices.size();
  s.y_sub.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    s.y_sub[i] = view.ys_by_x[s.indices[i]];
  }

  bool degenerate = true;
  for (std::size_t i = 1; i < m; ++i) {
    if (s.y_sub[i] != s.y_sub[0]) {
      degenerate = false;
      break;
    }
  }
  if (degenerate) return false;

  // Ties among the drawn x values are broken at random per replicate:
  // shuffling the y values within a same-block run is exactly that.
  if (view.has_x_ties) {
    std::size_t run = 0;
    while (run < m) {
      std::size_t end = run + 1;
      while (end < m &&
             view.block[s.indices[end]] == view.block[s.indices[run]]) {
        ++end;
      }
      if (end - run > 1) rng.shuffle(&s.y_sub[run], end - run);
      run = end;
    }
  }

  s.by_y.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    s.by_y[i] = {s.y_sub[i], static_cast<std::uint32_t>(i)};
  }
  std::sort(s.by_y.begin(), s.by_y.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  s.ranks.resize(m);
  unsigned __int128 denom = 0;
  unsigned __int128 ge_total = 0;
  std::size_t group = 0;
  while (group < m) {
    std::size_t end = group + 1;
    while (end < m && s.by_y[end].first == s.by_y[group].first) ++end;
    const auto le_count = static_cast<std::int64_t>(end);
    const auto ge_count = static_cast<std::uint64_t>(m - group);
    for (std::size_t k = group; k < end; ++k) {
      s.ranks[s.by_y[k].second] = le_count;
    }
    denom += static_cast<unsigned __int128>(ge_count) *
             (static_cast<std::uint64_t>(m) - ge_count) * (end - group);
    ge_total += static_cast<unsigned __int128>(ge_count) * (end - group);
    group = end;
  }

  unsigned __int128 jumps = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    jumps += static_cast<std::uint64_t>(
        std::llabs(s.ranks[i + 1] - s.ranks[i]));
  }

  const unsigned __int128 distinct_total =
      static_cast<unsigned __int128>(m) * (m + 1) / 2;
  if (ge_total == distinct_total) {
    const double md = static_cast<double>(m);
    *out = 1.0 - 3.0 * static_cast<double>(jumps) / (md * md - 1.0);
  } else {
    const unsigned __int128 numer =
        static_cast<unsigned __int128>(m) * jumps;
    *out = 1.0 -
           static_cast<double>(numer) / (2.0 * static_cast<double>(denom));
  }
  return true;
}

}  // namespace

PairedSample draw_subsample(const PairedSample& sample, std::size_t m,
                            Rng& rng) {
  const std::size_t n = sample.size();
  if (m < 1 || m >= n) {
    throw invalid_input("draw_subsample: need 1 <= m < n");
  }
  IndexSet seen(m);
  std::vector<std::uint64_t> chosen;
  chosen.reserve(m);
  floyd_sorted_indices(n, m, rng, seen, chosen);

  PairedSample out;
  out.xs.reserve(m);
  out.ys.reserve(m);
  for (const std::uint64_t idx : chosen) {
    out.xs.push_back(sample.xs[idx]);
    out.ys.push_back(sample.ys[idx]);
  }
  return out;
}

BootstrapDistribution bootstrap_distribution(const PairedSample& sample,
                                             const BootstrapConfig& cfg) {
  validate(sample);
  if (cfg.m < 2 || cfg.m >= sample.size()) {
    throw invalid_input("bootstrap: need 2 <= m < n");
  }
  if (cfg.replicates < 2) {
    throw invalid_input("bootstrap: need at least 2 replicates");
  }
  if (is_degenerate(sample)) {
    throw degenerate_sample("bootstrap: sample has all y values equal");
  }

  const SortedSampleView view = make_sorted_view(sample);
  const std::size_t n = sample.size();
  std::vector<double> values(cfg.replicates);
  const double scale = std::sqrt(static_cast<double>(cfg.m));

  parallel_for(cfg.replicates, cfg.threads, [&](std::size_t b) {
    Rng rng(derive_seed(cfg.seed, b));
    ReplicateScratch scratch;
    IndexSet seen(cfg.m);
    double value = 0.0;
    std::size_t redraws = 0;
    for (;;) {
      floyd_sorted_indices(n, cfg.m, rng, seen, scratch.indices);
      if (xi_of_positions(view, scratch, rng, &value)) break;
      if (redraws++ == cfg.max_degenerate_retries) {
        throw degeneracy_exhausted(
            "bootstrap: replicate " + std::to_string(b) + " exceeded " +
            std::to_string(cfg.max_degenerate_retries) + " redraws");
      }
    }
    values[b] = scale * value;
  });

  long double total = 0.0L;
  for (const double v : values) total += v;
  const double center =
      static_cast<double>(total / static_cast<long double>(cfg.replicates));

  BootstrapDistribution dist;
  dist.m = cfg.m;
  dist.center = center;
  dist.atoms.resize(cfg.replicates);
  for (std::size_t b = 0; b < cfg.replicates; ++b) {
    dist.atoms[b] = values[b] - center;
  }
  return dist;
}

double bootstrap_variance(const BootstrapDistribution& dist) {
  const std::size_t count = dist.atoms.size();
  if (count < 2) {
    throw invalid_input("bootstrap_variance: need at least 2 atoms");
  }
  long double mean = 0.0L;
  for (const double a : dist.atoms) mean += a;
  mean /= static_cast<long double>(count);
  long double ss = 0.0L;
  for (const double a : dist.atoms) {
    const long double d = a - mean;
    ss += d * d;
  }
  return static_cast<double>(ss / static_cast<long double>(count - 1));
}

BootstrapEstimate confidence_interval(double xi_n, double sigma_star,
                                      std::size_t n, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw invalid_input("confidence_interval: level must lie in (0, 1)");
  }
  if (n < 1) throw invalid_input("confidence_interval: n must be >= 1");
  if (!(sigma_star >= 0.0)) {
    throw invalid_input("confidence_interval: sigma_star must be >= 0");
  }
  BootstrapEstimate est;
  est.xi_n = xi_n;
  est.sigma_star_sq = sigma_star * sigma_star;
  est.level = level;
  est.z = standard_normal_quantile(0.5 * (1.0 + level));
  const double half_width =
      est.z * sigma_star / std::sqrt(static_cast<double>(n));
  est.ci_low = xi_n - half_width;
  est.ci_high = xi_n + half_width;
  return est;
}

}  // namespace xiboot
