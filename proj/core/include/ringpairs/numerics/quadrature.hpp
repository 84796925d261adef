#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <sstream>
#include <type_traits>
#include <vector>

#include "ringpairs/error.hpp"
#include "ringpairs/numerics/tolerance.hpp"

namespace ringpairs::numerics {

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  int subintervals = 0;
};

namespace detail {

// Kronrod 15 abscissae with their Gauss 7 subset at odd indices.
inline constexpr std::array<double, 8> gk15_x{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_wk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_w{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T kronrod = fc * gk15_wk[7];
  T gauss = fc * g7_w[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * gk15_x[j];
    T f1 = f(c - dx);
    T f2 = f(c + dx);
    kronrod += (f1 + f2) * gk15_wk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * g7_w[j / 2];
  }
  T value = kronrod * h;
  double err = std::abs((kronrod - gauss) * h);
  return {a, b, value, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) integration. The interval is split at
// the supplied breakpoints first, then the panel with the largest error
// estimate is bisected until the summed estimate meets the tolerance.
template <class F>
auto adaptive_quad(F&& f, std::span<const double> breakpoints, const Tolerance& tol)
    -> QuadratureResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  tol.validate();
  if (breakpoints.size() < 2) throw DomainError("quadrature needs an interval");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw DomainError("quadrature breakpoints must be strictly increasing");

  std::priority_queue<detail::Panel<T>> panels;
  T total{};
  double error = 0.0;
  int evaluations = 0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    auto p = detail::gk15<T>(f, breakpoints[i - 1], breakpoints[i]);
    evaluations += 15;
    total += p.value;
    error += p.error;
    panels.push(p);
  }

  auto finish = [&]() {
    // Re-sum from the panels to avoid drift from repeated updates.
    T sum{};
    double err = 0.0;
    auto copy = panels;
    std::vector<detail::Panel<T>> all;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    for (const auto& p : all) {
      sum += p.value;
      err += p.error;
    }
    return QuadratureResult<T>{sum, err, evaluations, static_cast<int>(all.size())};
  };

  for (int it = 0; it < tol.max_iterations; ++it) {
    if (!std::isfinite(std::abs(total)))
      throw DomainError("integrand is not finite on the interval");
    if (error <= tol.bound(std::abs(total))) return finish();
    auto worst = panels.top();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    panels.pop();
    auto left = detail::gk15<T>(f, worst.a, mid);
    auto right = detail::gk15<T>(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  auto result = finish();
  if (result.error <= tol.bound(std::abs(result.value))) return result;
  const auto& worst = panels.top();
  std::ostringstream msg;
  msg.precision(9);
  msg << "adaptive quadrature did not converge: error estimate " << result.error
      << ", worst subinterval [" << worst.a << ", " << worst.b << "] with error " << worst.error;
  throw ConvergenceError(msg.str());
}

template <class F>
auto adaptive_quad(F&& f, double a, double b, const Tolerance& tol) {
  if (a == b) {
    using T = std::invoke_result_t<F&, double>;
    return QuadratureResult<T>{};
  }
  if (a > b) {
    auto r = adaptive_quad(std::forward<F>(f), b, a, tol);
    r.value = -r.value;
    return r;
  }
  const std::array<double, 2> pts{a, b};
  return adaptive_quad(std::forward<F>(f), std::span<const double>(pts), tol);
}

}  // namespace ringpairs::numerics
