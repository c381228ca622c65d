#include "xiboot/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xiboot/errors.hpp"

namespace xiboot {

void validate(const PairedSample& sample) {
  if (sample.xs.size() != sample.ys.size()) {
    throw invalid_input("sample: x and y columns differ in length");
  }
  if (sample.size() < 2) {
    throw invalid_input("sample: need at least 2 observations");
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!std::isfinite(sample.xs[i]) || !std::isfinite(sample.ys[i])) {
      throw invalid_input("sample: non-finite value at row " +
                          std::to_string(i));
    }
  }
}

bool has_y_ties(const PairedSample& sample) {
  std::vector<double> ys = sample.ys;
  std::sort(ys.begin(), ys.end());
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (ys[i] == ys[i - 1]) return true;
  }
  return false;
}

bool is_degenerate(const PairedSample& sample) {
  for (std::size_t i = 1; i < sample.ys.size(); ++i) {
    if (sample.ys[i] != sample.ys[0]) return false;
  }
  return true;
}

}  // namespace xiboot
