#pragma once

#include <stdexcept>

namespace xiboot {

// Arguments violate a documented precondition.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A sample whose y values are all equal; the rank correlation is undefined
// on it and the sample has to be discarded.
class degenerate_sample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bootstrap replicate ran out of redraw attempts without producing a
// non-degenerate subsample.
class degeneracy_exhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xiboot
