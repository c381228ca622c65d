#pragma once

#include <cstddef>
#include <vector>

namespace xiboot {

// Observed (x, y) pairs. Both columns have length n >= 2 and finite entries.
struct PairedSample {
  std::vector<double> xs;
  std::vector<double> ys;

  std::size_t size() const { return xs.size(); }
};

// Throws invalid_input if the sample violates its invariants.
void validate(const PairedSample& sample);

// True iff the y column contains at least one repeated value.
bool has_y_ties(const PairedSample& sample);

// True iff all y values are equal (the rank correlation is undefined).
bool is_degenerate(const PairedSample& sample);

}  // namespace xiboot
