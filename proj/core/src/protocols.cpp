#include "qte/protocols.hpp"

#include <cmath>

#include "qte/rootfind.hpp"

namespace qte {

PhiProfile phi_smoothstep(double Phi_target, double tau) {
  if (tau <= 0.0) throw schedule_error("phi_smoothstep: tau must be positive");
  PhiProfile p;
  p.phi = [Phi_target, tau](double t) {
    const double s = t / tau;
    return Phi_target * (3.0 - 2.0 * s) * s * s;
  };
  p.phidot = [Phi_target, tau](double t) {
    const double s = t / tau;
    return 6.0 * Phi_target * s * (1.0 - s) / tau;
  };
  p.stationary_endpoints = true;
  return p;
}

PhiProfile phi_quadratic_legacy(double a, double tau) {
  if (tau <= 0.0) throw schedule_error("phi_quadratic_legacy: tau must be positive");
  PhiProfile p;
  p.phi = [a, tau](double t) { return a * (t - 2.0 * t * t / (3.0 * tau)); };
  p.phidot = [a, tau](double t) { return a * (1.0 - 4.0 * t / (3.0 * tau)); };
  p.stationary_endpoints = false;
  return p;
}

Schedule const_mu_schedule(double Omega_i, double Omega_f, double phi_i, double phi_f,
                           double tau, double dt, StrokeKind kind) {
  if (Omega_i <= 0.0 || Omega_f <= 0.0 || tau <= 0.0)
    throw schedule_error("const_mu_schedule: inputs must be positive");
  const double Phi = phi_f - phi_i;
  const double theta_total = 0.5 * tau * (Omega_i + Omega_f);
  const double mu = -Phi / theta_total;
  const double dOm = (Omega_f - Omega_i) / tau;
  auto Om = [Omega_i, dOm](double t) { return Omega_i + dOm * t; };
  auto theta = [Omega_i, dOm](double t) { return Omega_i * t + 0.5 * dOm * t * t; };
  return make_schedule(
      kind, tau, dt, Om,
      [phi_i, mu, theta](double t) { return phi_i - mu * theta(t); },
      [mu, Om](double t) { return -mu * Om(t); });
}

SteTarget ste_target(const STERequest& req) {
  if (req.Omega_i <= 0.0 || req.Omega_f <= 0.0 || req.tau <= 0.0)
    throw schedule_error("ste_target: frequencies and tau must be positive");
  SteTarget tg;
  tg.c0 = chi_attractor(req.Omega_i, req.bath.T);
  tg.delta = chi_attractor(req.Omega_f, req.bath.T) - tg.c0;
  return tg;
}

Schedule synthesize_ste(const STERequest& req) {
  if (req.bath.n != 1.0)
    throw schedule_error("synthesize_ste: only the Ohmic (n = 1) balance is supported");
  const SteTarget tg = ste_target(req);
  const PhiProfile prof =
      (req.profile == PhiProfileKind::CubicSmoothstep)
          ? phi_smoothstep(req.Phi, req.tau)
          : phi_quadratic_legacy(
                req.quadratic_a != 0.0 ? req.quadratic_a : 1.0 / (req.tau * req.tau),
                req.tau);

  Schedule s;
  s.kind = StrokeKind::Open;
  // grid mirrors make_schedule's
  {
    Schedule probe = constant_schedule(StrokeKind::Open, req.tau, req.dt, 1.0);
    s.t = probe.t;
  }
  const std::size_t n = s.t.size();
  s.Omega.resize(n);
  s.phi.resize(n);
  s.phidot.resize(n);

  const double A = req.bath.A;
  const double T = req.bath.T;
  const double Om_hi = 10.0 * std::max(req.Omega_i, req.Omega_f);
  // The balance can have a second root at low frequency; track the branch
  // continuous with Omega(0) = Omega_i by bracketing around the previous
  // sample and widening geometrically only as needed.
  double prev = req.Omega_i;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = s.t[i];
    const double sfrac = t / req.tau;
    const double pd = prof.phidot(t);
    const double c = tg.chi(sfrac);
    const double cdot = tg.chi_dot(sfrac, req.tau);
    auto balance = [&](double Om) {
      const double alpha = std::hypot(Om, pd);
      return -2.0 * A * Om * (c / std::tanh(0.5 * alpha / T)) -
             std::sqrt(2.0) * A * Om - cdot;
    };
    std::optional<double> root;
    const double f0 = balance(prev);
    for (double half = 0.05 * (1.0 + prev); !root && half < 4.0 * Om_hi; half *= 2.0) {
      const double lo = std::max(1e-6, prev - half);
      const double hi = std::min(Om_hi, prev + half);
      // scan outward from prev for the nearest sign change, then bisect
      const int m = 32;
      double fup = f0, fdn = f0, xup = prev, xdn = prev;
      for (int k = 1; k <= m && !root; ++k) {
        const double xu = prev + (hi - prev) * k / m;
        const double fu = balance(xu);
        if (fup * fu <= 0.0) {
          root = solve_bracketed(balance, xup, xu, 1e-14, 1e-12);
          break;
        }
        xup = xu;
        fup = fu;
        const double xd = prev - (prev - lo) * k / m;
        const double fd = balance(xd);
        if (fdn * fd <= 0.0) {
          root = solve_bracketed(balance, xd, xdn, 1e-14, 1e-12);
          break;
        }
        xdn = xd;
        fdn = fd;
      }
    }
    if (!root)
      throw protocol_infeasible(
          "synthesize_ste: no positive frequency balances the target rate at t = " +
          std::to_string(t) + "; increase the duration");
    s.Omega[i] = *root;
    prev = *root;
    s.phi[i] = prof.phi(t);
    s.phidot[i] = pd;
  }
  derive_field_columns(s);
  return s;
}

}  // namespace qte
