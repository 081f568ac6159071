#pragma once

// Central finite differences shared by the residual engines.

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace aristo::numdiff {

/// Step for a central difference at coordinate value x: max(1,|x|) * eps^(1/3).
inline double step(double x) {
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  return std::max(1.0, std::abs(x)) * base;
}

/// d/dx f at x by central difference. `f` maps double -> T where T supports
/// subtraction and division by double (double, complex, Eigen vectors).
template <class F>
auto central(F&& f, double x) {
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  const double h = step(x);
  // Re-derive the realised step so rounding in x+h does not bias the quotient.
  const double xp = x + h;
  const double xm = x - h;
  const R fp = f(xp);
  const R fm = f(xm);
  return R((fp - fm) / (xp - xm));
}

/// Second derivative by the three-point stencil; step eps^(1/4) scaled.
template <class F>
auto second(F&& f, double x) {
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  static const double base = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  const double h = std::max(1.0, std::abs(x)) * base;
  const R fp = f(x + h);
  const R f0 = f(x);
  const R fm = f(x - h);
  return R((fp - 2.0 * f0 + fm) / (h * h));
}

}  // namespace aristo::numdiff
