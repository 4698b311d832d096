#pragma once

#include <cmath>
#include <functional>
#include <optional>

namespace qte {

// Bracketed scalar root find: bisection with Newton-style secant acceleration.
// Returns nullopt when [lo, hi] does not bracket a sign change.
template <class F>
std::optional<double> solve_bracketed(F&& f, double lo, double hi,
                                      double xtol = 1e-14, double ftol = 1e-13,
                                      int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) return std::nullopt;

  double a = lo, b = hi, fa = flo, fb = fhi;
  int side = 0;  // which endpoint was retained last (Illinois anti-stagnation)
  for (int i = 0; i < max_iter; ++i) {
    // secant candidate, fall back to midpoint if it leaves the bracket
    double x = b - fb * (b - a) / (fb - fa);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    const double fx = f(x);
    if (std::abs(fx) < ftol || (b - a) < xtol * std::max(1.0, std::abs(x)))
      return x;
    if (fa * fx <= 0.0) {
      b = x;
      fb = fx;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = x;
      fa = fx;
      if (side == +1) fb *= 0.5;
      side = +1;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qte
