#pragma once

// Qubit state algebra on expectation-value vectors.
// Model units: hbar = k_B = 1 throughout.

#include <array>
#include <stdexcept>
#include <string>

namespace qte {

// Operator frames used to tag a state vector.
//   Static    : {Sx, Sy, Sz}, components in units of hbar
//   Dynamical : {H, L, C}, components in energy units, scale Omega carried
//   Eigen     : {chi, sigma_x, sigma_y}, dimensionless, orthonormal basis
enum class Frame { Static, Dynamical, Eigen };

std::string frame_name(Frame f);

// Control-parameter snapshot of the Hamiltonian direction.
//   omega, epsilon : field components (H = omega*Sz + epsilon*Sx)
//   Omega          : sqrt(omega^2 + epsilon^2), Rabi frequency
//   phi            : Hamiltonian angle, omega = Omega cos(phi), epsilon = Omega sin(phi)
//   mu             : adiabatic parameter, kappa = sqrt(1 + mu^2)
//   alpha          : dressed frequency kappa * Omega
struct FrameParams {
  double omega = 0.0;
  double epsilon = 0.0;
  double Omega = 0.0;
  double phi = 0.0;
  double mu = 0.0;
  double kappa = 1.0;
  double alpha = 0.0;
  double xi = 0.0;  // arccos(1/kappa), eigenframe tilt

  static FrameParams from_fields(double omega, double epsilon, double mu = 0.0);
  static FrameParams from_polar(double Omega, double phi, double mu = 0.0);
};

struct BlochState {
  Frame frame = Frame::Static;
  std::array<double, 3> c{0.0, 0.0, 0.0};
  // Rabi frequency the components were built with (Dynamical/Eigen frames).
  double scale = 0.0;

  double operator[](int i) const { return c[static_cast<size_t>(i)]; }
};

struct state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Polarization magnitude |S| in units of hbar; <= 1/2 for a physical state.
double polarization(const BlochState& s);

// Thermal state at frequency Omega > 0 and temperature T > 0, expressed in the
// dynamical frame: <H> = Omega * Seq, <L> = <C> = 0.
BlochState thermal_state(double Omega, double T);

// Equilibrium polarization -0.5 * tanh(Omega / (2 T)).
double thermal_polarization(double Omega, double T);

// Rotate a state between operator frames. The params must describe the
// Hamiltonian the target (and source) frame is built on.
BlochState frame_rotate(const BlochState& s, Frame to, const FrameParams& p);

double vn_entropy(const BlochState& s);
double energy_entropy(const BlochState& s, const FrameParams& p);
double divergence(const BlochState& s, const FrameParams& p);

// sqrt(<L>^2 + <C>^2) / Omega, in [0, 1/2].
double coherence_measure(const BlochState& s, const FrameParams& p);

// (<H>^2 + <L>^2 + <C>^2) / Omega^2; invariant under unitary dynamics.
double casimir_companion(const BlochState& s, const FrameParams& p);

// Lagrange multipliers of the generalized Gibbs form
// rho = Z^{-1} exp(-(beta*chi + gx*sigma_x + gy*sigma_y)).
struct GibbsParams {
  double beta = 0.0;
  double gamma_x = 0.0;
  double gamma_y = 0.0;
  double r = 0.0;  // sqrt(beta^2 + gx^2 + gy^2)
};

// f(r) = -tanh(r/sqrt(2)) / (sqrt(2) r), with f(0) = -1/2.
double gibbs_f(double r);
// s(k) = ln((1 - sqrt(2) k)/(1 + sqrt(2) k)) / (sqrt(2) k), with s(0) = -2.
double gibbs_s(double k);

// Expectations (c_chi, c_sx, c_sy) -> multipliers; requires k < 1/sqrt(2).
GibbsParams gibbs_from_expectations(double c_chi, double c_sx, double c_sy);
std::array<double, 3> expectations_from_gibbs(const GibbsParams& g);

}  // namespace qte
