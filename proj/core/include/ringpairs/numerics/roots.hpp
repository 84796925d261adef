#pragma once

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>

#include "ringpairs/error.hpp"
#include "ringpairs/numerics/tolerance.hpp"

namespace ringpairs::numerics {

struct RootResult {
  double root = 0.0;
  int iterations = 0;
};

// Bracketed root of a continuous function on [lo, hi] (TOMS 748).
template <class F>
RootResult find_root(F&& f, double lo, double hi, const Tolerance& tol) {
  tol.validate();
  if (!(lo < hi)) throw DomainError("root bracket must satisfy lo < hi");
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) throw DomainError("function not finite at bracket");
  if (flo == 0.0) return {lo, 0};
  if (fhi == 0.0) return {hi, 0};
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "root not bracketed on [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
  auto stop = [&](double a, double b) {
    return std::abs(b - a) <= tol.bound(std::min(std::abs(a), std::abs(b)));
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(tol.max_iterations);
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
  if (iters >= static_cast<std::uintmax_t>(tol.max_iterations) && !stop(a, b))
    throw ConvergenceError("root finding exceeded the iteration limit");
  return {0.5 * (a + b), static_cast<int>(iters)};
}

// Golden-section minimisation of a unimodal function on [lo, hi].
template <class F>
double golden_section_minimum(F&& f, double lo, double hi, const Tolerance& tol) {
  tol.validate();
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < tol.max_iterations; ++it) {
    if (std::abs(b - a) <= tol.bound(std::max(std::abs(a), std::abs(b)))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ringpairs::numerics
