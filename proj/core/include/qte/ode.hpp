#pragma once

// Small dense ODE integration: adaptive Dormand-Prince 5(4) and a fixed-step
// RK4 fallback for grid-locked runs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace qte {

struct ode_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double min_step = 1e-12;
  std::size_t max_steps = 50'000'000;
};

namespace detail {

// Dormand-Prince coefficients.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double dp_b5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84, 0.0};
inline constexpr double dp_b4[7] = {5179.0 / 57600,  0.0,   7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace detail

// Integrate dy/dt = f(t, y) from t0 to t1. f: (double, const State&) -> State.
// State is std::array<double, N>.
template <std::size_t N, class F>
std::array<double, N> integrate_adaptive(F&& f, std::array<double, N> y, double t0,
                                         double t1, const OdeOptions& opt = {}) {
  using State = std::array<double, N>;
  if (t1 == t0) return y;
  const double dir = (t1 > t0) ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::min(std::abs(opt.initial_step), std::abs(t1 - t0));

  std::array<State, 7> k;
  std::size_t steps = 0;
  // roundoff floor: a remaining sliver below this counts as arrival at t1
  const double t_eps = 8.0 * std::numeric_limits<double>::epsilon() *
                       std::max({1.0, std::abs(t0), std::abs(t1)});
  for (;;) {
    const double rem = t1 - t;
    if (dir * rem <= t_eps) break;
    if (++steps > opt.max_steps) throw ode_error("integrate_adaptive: step budget exhausted");
    // step actually attempted; clamping to the remainder must not feed back
    // into the error-controlled step size
    const double hs = (dir * (h - rem) > 0.0) ? rem : h;

    k[0] = f(t, y);
    for (int i = 1; i < 7; ++i) {
      State yi = y;
      for (int j = 0; j < i; ++j) {
        const double aij = detail::dp_a[i][j];
        if (aij == 0.0) continue;
        for (std::size_t n = 0; n < N; ++n) yi[n] += hs * aij * k[static_cast<size_t>(j)][n];
      }
      k[static_cast<size_t>(i)] = f(t + detail::dp_c[i] * hs, yi);
    }

    State y5 = y;
    double err = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      double e = 0.0;
      for (int i = 0; i < 7; ++i) {
        y5[n] += hs * detail::dp_b5[i] * k[static_cast<size_t>(i)][n];
        e += hs * (detail::dp_b5[i] - detail::dp_b4[i]) * k[static_cast<size_t>(i)][n];
      }
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[n]), std::abs(y5[n]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err <= 1.0) {
      t += hs;
      y = y5;
    }
    const double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h = hs * std::clamp(fac, 0.2, 5.0);
    if (err > 1.0 && std::abs(h) < opt.min_step)
      throw ode_error("integrate_adaptive: step size underflow");
  }
  return y;
}

// Single classical RK4 step.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& y, double t, double h) {
  using State = std::array<double, N>;
  auto axpy = [](const State& a, double s, const State& b) {
    State r = a;
    for (std::size_t n = 0; n < N; ++n) r[n] += s * b[n];
    return r;
  };
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const State k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const State k4 = f(t + h, axpy(y, h, k3));
  State r = y;
  for (std::size_t n = 0; n < N; ++n)
    r[n] += h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
  return r;
}

}  // namespace qte
