#pragma once

// Closed-system propagators for the unitary strokes: constant-mu matrix form,
// sudden jump, bang-bang timing, and generic ODE evolution of (H, L, C).

#include <vector>

#include "qte/bloch.hpp"
#include "qte/linalg.hpp"
#include "qte/ode.hpp"
#include "qte/schedule.hpp"

namespace qte {

struct unitary_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Constant-mu stroke propagator on (H, L, C): compression * U2(mu, theta),
// where theta is the accumulated phase of Omega and U2 is the orthogonal
// rotation by kappa*theta about the (1, 0, mu)/kappa axis.
Mat3 const_mu_propagator(double mu, double theta, double compression = 1.0);

// mu_l = 1 / sqrt((2 pi l / Phi)^2 - 1): the discrete mu values whose
// constant-mu stroke ends coherence-free (kappa * theta = 2 pi l).
double mu_quantized(int l, double Phi);

// Minimum coherence-free constant-mu stroke duration, tau = K sqrt((2pi/Phi)^2 - 1).
double tau_min_const_mu(double K, double Phi);

// Duration of the l-th coherence-free constant-mu stroke realized as a linear
// Omega ramp: theta = sqrt((2 pi l)^2 - Phi^2), tau = 2 theta / (Omega_i + Omega_f).
double sta_stroke_duration(double Omega_i, double Omega_f, double Phi, int l = 1);

// Instantaneous-quench propagator: (Omega_f/Omega_i) times the first-order
// rotation-reflection block in cos(Phi), sin(Phi). Note the (L -> -L) parity
// of the printed matrix; it coincides with the mu -> infinity limit of the
// constant-mu propagator on coherence-free states.
Mat3 sudden_propagator(double Omega_i, double Omega_f, double Phi);

struct FeatTimes {
  double tau1 = 0.0;  // segment at omega_f, precession rate Omega_f
  double tau2 = 0.0;  // segment at omega_i, precession rate Omega_i
  double zeta = 1.0;
  bool clamped = false;  // |zeta| exceeded 1 by roundoff and was clamped
};

// Time-optimal bang-bang timing between thermal directions of (omega_i, eps)
// and (omega_f, eps). Total time (1/2Omega_i + 1/2Omega_f) * arccos(zeta),
// split half-angle per segment.
FeatTimes feat_times(double omega_i, double omega_f, double epsilon);

// Integrate the Heisenberg equations for v = (<H>, <L>, <C>) along a schedule:
//   dv/dt = Omega G(mu) v + (dOmega/dt / Omega) v  (+ upsilon Sy drive term)
// Controls are interpolated linearly between grid samples. Returns the
// trajectory on the schedule grid, dynamical frame.
std::vector<BlochState> evolve_unitary(const BlochState& init, const Schedule& sched,
                                       const OdeOptions& opt = {});

// Quantum-adiabatic work of an expansion/compression from initial energy
// <H_i>: W_ideal = (Omega_f/Omega_i - 1) <H_i>.
double adiabatic_work(double H_i, double Omega_i, double Omega_f);

}  // namespace qte
