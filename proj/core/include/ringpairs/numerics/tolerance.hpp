#pragma once

#include <limits>

#include "ringpairs/error.hpp"

namespace ringpairs::numerics {

struct Tolerance {
  double absolute = std::numeric_limits<double>::min();
  double relative = 1e-10;
  int max_iterations = 2000;

  void validate() const {
    if (!(absolute > 0.0) || !(relative > 0.0) || max_iterations <= 0)
      throw DomainError("tolerance fields must be positive");
  }

  double bound(double magnitude) const {
    double r = relative * magnitude;
    return r > absolute ? r : absolute;
  }
};

}  // namespace ringpairs::numerics
