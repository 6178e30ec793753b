#pragma once

// Double-exponential quadrature on (0, inf).
//
// The substitution x = exp((pi/2) sinh t) maps (0, inf) onto the real line and
// makes integrands that decay at both ends (x^a e^{-x} at infinity, e^{-s/x}
// or a positive power of x at the origin) decay double-exponentially in t.
// Gauss-Laguerre nodes cannot resolve the essential zero of e^{-s/x}; this
// rule does, and converges geometrically in the number of halvings.

#include <cmath>
#include <functional>
#include <type_traits>

#include "mvop/linalg.hpp"

namespace mvop::quad {

struct Options {
  Real rel_tol = 1e-18L;
  Real abs_tol = 0.0L;
  /// Integration is truncated to x in [x_min, x_max].
  Real x_min = 1e-400L;
  Real x_max = 1e5L;
  int max_levels = 10;
  Real initial_step = 0.5L;
};

template <typename T>
struct Result {
  T value;
  Real error_estimate;
  int levels;
  long evaluations;
};

namespace detail {

inline Real magnitude(Real v) { return std::abs(v); }
inline Real magnitude(const Complex& v) { return std::abs(v); }
inline Real magnitude(const CMatrix& v) { return v.norm(); }

}  // namespace detail

/// Integrates f over (0, inf). T must support +, -, scalar * and a zero-valued
/// start; the zero is taken from `zero`.
template <typename T, typename F>
Result<T> integrate_half_line(F&& f, T zero, const Options& opt = {}) {
  constexpr Real half_pi = kPi / 2.0L;
  const Real t_lo = std::asinh(std::log(opt.x_min) / half_pi);
  const Real t_hi = std::asinh(std::log(opt.x_max) / half_pi);

  auto node = [&](Real t) -> T {
    const Real x = std::exp(half_pi * std::sinh(t));
    const Real w = half_pi * std::cosh(t) * x;
    if (!(x > 0) || !std::isfinite(x)) return zero;
    return f(x) * w;
  };

  Real h = opt.initial_step;
  T sum = zero;
  long evals = 0;
  for (Real t = 0; t <= t_hi; t += h) {
    sum = sum + node(t);
    ++evals;
  }
  for (Real t = -h; t >= t_lo; t -= h) {
    sum = sum + node(t);
    ++evals;
  }
  T estimate = sum * h;
  Real err = std::numeric_limits<Real>::infinity();
  int level = 0;
  for (level = 1; level <= opt.max_levels; ++level) {
    // Add only the midpoints of the previous grid.
    const Real hn = h / 2.0L;
    T extra = zero;
    for (Real t = hn; t <= t_hi; t += h) {
      extra = extra + node(t);
      ++evals;
    }
    for (Real t = -hn; t >= t_lo; t -= h) {
      extra = extra + node(t);
      ++evals;
    }
    sum = sum + extra;
    h = hn;
    T next = sum * h;
    err = detail::magnitude(next - estimate);
    estimate = next;
    const Real scale = detail::magnitude(estimate);
    // The error of the trapezoid sum in t behaves like exp(-c/h), so one
    // halving roughly squares it: once the last difference is e, the current
    // estimate is good to about e^2 (with a 100x margin here).
    const Real rel = scale > 0 ? err / scale : err;
    if (level >= 3 && (100.0L * rel * rel <= opt.rel_tol || err <= opt.abs_tol)) break;
  }
  return {estimate, err, level, evals};
}

/// Scalar convenience overload.
template <typename F>
Real integrate(F&& f, const Options& opt = {}) {
  return integrate_half_line<Real>(std::forward<F>(f), 0.0L, opt).value;
}

}  // namespace mvop::quad
