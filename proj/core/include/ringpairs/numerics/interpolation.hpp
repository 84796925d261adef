#pragma once

#include <memory>
#include <vector>

namespace ringpairs::numerics {

// Shape-preserving piecewise cubic Hermite interpolant (PCHIP). Needs at
// least four strictly increasing abscissae.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double x_min_ = 0.0;
  double x_max_ = 0.0;
};

}  // namespace ringpairs::numerics
