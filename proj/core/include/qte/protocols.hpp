#pragma once

// Control-schedule synthesis: phi(t) profiles, constant-mu ramps, and the
// reverse-engineered shortcut-to-equilibrium (STE) protocol.

#include <functional>

#include "qte/open.hpp"
#include "qte/schedule.hpp"

namespace qte {

// Raised when no positive control frequency satisfies the synthesis balance
// at some grid time (duration too aggressive for the bath).
struct protocol_infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PhiProfile {
  std::function<double(double)> phi;
  std::function<double(double)> phidot;
  bool stationary_endpoints = true;  // phidot(0) = phidot(tau) = 0
};

// phi(t) = Phi_target (3 s^2 - 2 s^3), s = t/tau. Stationary at both ends;
// max |phidot| = 3 Phi_target / (2 tau) at s = 1/2.
PhiProfile phi_smoothstep(double Phi_target, double tau);

// phi(t) = a (t - 2 t^2 / (3 tau)) exactly as printed in the source protocol.
// Kept as a legacy option: phidot(0) = a != 0, so the endpoint is not
// stationary and the synthesized schedule starts off the thermal manifold.
PhiProfile phi_quadratic_legacy(double a, double tau);

// Linear Omega ramp with phi(t) = phi_i - mu * integral(Omega); mu constant by
// construction, mu = -2 (phi_f - phi_i) / (tau (Omega_i + Omega_f)).
Schedule const_mu_schedule(double Omega_i, double Omega_f, double phi_i, double phi_f,
                           double tau, double dt = 1e-3,
                           StrokeKind kind = StrokeKind::Unitary);

enum class PhiProfileKind { CubicSmoothstep, QuadraticLegacy };

struct STERequest {
  double Omega_i = 0.0;
  double Omega_f = 0.0;
  double tau = 0.0;
  BathSpec bath;
  PhiProfileKind profile = PhiProfileKind::CubicSmoothstep;
  double Phi = 1.5707963267948966;  // smoothstep target angle
  double quadratic_a = 0.0;         // legacy profile slope; 0 -> 1/tau^2
  double dt = 1e-3;
};

// Eigenframe population boundary values (c_chi at t=0 and t=tau) and the cubic
// interpolant between them: c_chi(s) = c0 + 3 D s^2 - 2 D s^3.
struct SteTarget {
  double c0 = 0.0;
  double delta = 0.0;
  double chi(double s) const { return c0 + (3.0 - 2.0 * s) * s * s * delta; }
  double chi_dot(double s, double tau) const {
    return 6.0 * delta * s * (1.0 - s) / tau;
  }
};

SteTarget ste_target(const STERequest& req);

// Reverse-engineer Omega(t) so the adiabatic-frame master equation drives
// c_chi exactly along the cubic interpolant while c_sigma stays zero: at each
// grid time solve
//   dc_chi/dt = -2 A Omega coth(alpha/2T) c_chi - sqrt(2) A Omega,
//   alpha^2 = Omega^2 + phidot^2
// for Omega by bracketed root-find. Endpoints reproduce Omega_i and Omega_f
// when the profile is stationary there.
Schedule synthesize_ste(const STERequest& req);

}  // namespace qte
