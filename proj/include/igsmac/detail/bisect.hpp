#pragma once

#include <cmath>
#include <utility>

namespace igsmac::detail {

/// Plain bisection on a bracketing interval [lo, hi] with f(lo) and f(hi) of
/// opposite (weak) sign.  Runs until the interval is narrower than xtol.
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, double xtol, int max_iter = 200) {
  const bool lo_negative = f_lo < 0.0;
  for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Scans [lo, hi] with `samples` points for the first sign change of f and
/// bisects inside that bracket.  Returns the smallest bracketed root, or
/// `fallback` when f never changes sign.
template <class F>
double first_root_scan(F&& f, double lo, double hi, int samples, double xtol,
                       double fallback) {
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) return lo;
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / samples;
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((f_prev < 0.0) != (fx < 0.0)) {
      return bisect(f, x_prev, x, f_prev, xtol);
    }
    x_prev = x;
    f_prev = fx;
  }
  return fallback;
}

}  // namespace igsmac::detail
