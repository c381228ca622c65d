#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

namespace xiboot {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Seed for stream `index` of the family rooted at `seed`. This is the
// splitmix64 sequence read at position `index`, so any stream can be
// derived without stepping through the ones before it. Replicate b of a
// bootstrap run uses derive_seed(cfg.seed, b), which is what makes the
// output independent of how replicates are scheduled across threads.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// xoshiro256++ with explicit samplers. The standard <random> distributions
// are implementation-defined, which would break the byte-identical
// reproducibility contract across toolchains, so the samplers live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();

  // Uniform on {0, ..., bound - 1}, unbiased (Lemire rejection). bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Standard normal (Marsaglia polar, one value cached).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang. shape > 0.
  double gamma(double shape);

  // Chi-square with `dof` degrees of freedom, dof > 0.
  double chi_square(double dof);

  // Poisson with the given mean >= 0.
  long poisson(double mean);

  // In-place Fisher-Yates shuffle of data[0..count).
  template <typename T>
  void shuffle(T* data, std::size_t count) {
    for (std::size_t i = count; i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      using std::swap;
      swap(data[i - 1], data[j]);
    }
  }

 private:
  std::uint64_t state_[4];
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace xiboot
