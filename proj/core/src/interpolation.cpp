#include "ringpairs/numerics/interpolation.hpp"

#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>

#include "ringpairs/error.hpp"

namespace ringpairs::numerics {

struct MonotoneCubic::Impl {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw DomainError("interpolation abscissae and ordinates differ in length");
  if (x.size() < 4) throw DomainError("monotone cubic interpolation needs at least four samples");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw DomainError("interpolation samples must be finite");
    if (i > 0 && !(x[i] > x[i - 1])) throw DomainError("interpolation abscissae must be strictly increasing");
  }
  x_min_ = x.front();
  x_max_ = x.back();
  impl_ = std::make_shared<const Impl>(Impl{{std::move(x), std::move(y)}});
}

double MonotoneCubic::operator()(double x) const {
  if (x < x_min_ || x > x_max_) throw RangeError("interpolation point outside sampled range");
  return impl_->spline(x);
}

double MonotoneCubic::derivative(double x) const {
  if (x < x_min_ || x > x_max_) throw RangeError("interpolation point outside sampled range");
  return impl_->spline.prime(x);
}

}  // namespace ringpairs::numerics
