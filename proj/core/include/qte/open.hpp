#pragma once

// Dissipative propagation: weak-coupling GKLS dynamics for a static or driven
// qubit, exact and first-order isochore maps, and energy-measurement
// dephasing.

#include <array>
#include <vector>

#include "qte/bloch.hpp"
#include "qte/linalg.hpp"
#include "qte/ode.hpp"
#include "qte/schedule.hpp"

namespace qte {

struct open_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ohmic bath: temperature T, coupling A, spectral exponent n (rate prefactor
// scales as frequency^n; n = 1 is the default Ohmic case).
struct BathSpec {
  double T = 1.0;
  double A = 0.01;
  double n = 1.0;
};

struct DissipatorRates {
  double up = 0.0;    // absorption
  double down = 0.0;  // emission
  double Gamma() const { return up + down; }
};

// Bose-Einstein occupation at gap x.
double bose_einstein(double x, double T);

// Static-Hamiltonian rates: down = 2 A Omega (1 + N(Omega)), up = 2 A Omega N(Omega).
DissipatorRates rates_elementary(double Omega, const BathSpec& bath);

// Driven-frame rates: the prefactor carries the bare frequency alpha/kappa,
// the occupation the dressed gap alpha. Detailed balance holds w.r.t. alpha.
DissipatorRates name_rates(double alpha, double kappa, const BathSpec& bath);

// Exact fixed-Hamiltonian relaxation for time tau: population decays to the
// thermal value at rate Gamma, coherence decays at Gamma/2 (plus k_d Omega^2
// dephasing) while precessing at Omega. Dynamical-frame in, dynamical-frame out.
BlochState evolve_isochore(const BlochState& s, double Omega, const BathSpec& bath,
                           double tau, double k_d = 0.0);

// The same map as an affine operator on (H, L, C).
Affine3 isochore_affine(double Omega, const BathSpec& bath, double tau,
                        double k_d = 0.0);

// First-order short-time isochore map, exactly the four printed rows
// (population row 1 - Gamma tau with affine thermal feed; coherence block
// 1 - Gamma tau/2 with -/+ Omega tau coupling). Note the coherence rotation
// sense is opposite to the generator convention used elsewhere; kept verbatim
// because the sudden-cycle closed forms are built on it.
// validity_ok (optional) reports Gamma tau <= 0.05.
Affine3 sudden_isochore_affine(double Omega, const BathSpec& bath, double tau,
                               bool* validity_ok = nullptr);

struct ElementaryTrajectory {
  std::vector<double> t;
  std::vector<BlochState> states;   // dynamical frame
  std::vector<double> power;        // <dH/dt> = S_H * domega/dt
  std::vector<double> heat_flux;    // -Gamma (<H> - Omega S_eq)
  std::vector<double> work, heat;   // cumulative, integrated with the state
};

// GKLS evolution for a schedule with epsilon = 0 throughout (field along z
// only). Rejects schedules with a transverse component.
ElementaryTrajectory evolve_elementary(const BlochState& init, const Schedule& sched,
                                       const BathSpec& bath, const OdeOptions& opt = {});

struct NameTrajectory {
  std::vector<double> t;
  // Eigenframe components (<chi>, <sigma_x>, <sigma_y>) per sample.
  std::vector<std::array<double, 3>> g;
  double inertial_measure = 0.0;  // max |d(mu)/dt| / Omega over the schedule
  bool inertial_ok = true;        // measure below threshold
};

inline constexpr double kInertialThresholdDefault = 0.1;

// Adiabatic-frame master equation integrated in the interaction picture:
//   d<chi>/dt    = -Gamma (<chi> - <chi>_ia)
//   d<sigma>/dt  = -(Gamma/2) <sigma>   (precessing at alpha)
// with <chi>_ia = -(1/sqrt(2)) tanh(alpha / 2T). Samples are reported in the
// Schroedinger picture on the schedule grid.
NameTrajectory evolve_name(const std::array<double, 3>& init_g, const Schedule& sched,
                           const BathSpec& bath, const OdeOptions& opt = {},
                           double inertial_threshold = kInertialThresholdDefault);

// Attractor value of <chi> at dressed gap alpha.
double chi_attractor(double alpha, double T);

struct MeasurementSpec {
  double k_d = 0.0;  // double-commutator dephasing rate knob
};

struct OpenTrajectory {
  std::vector<double> t;
  std::vector<BlochState> states;  // dynamical frame
  std::vector<double> power;       // <dH/dt>
  std::vector<double> heat_flux;   // dissipative part of d<H>/dt
  std::vector<double> work, heat;  // cumulative, integrated with the state
};

// Full driven-open evolution in the dynamical frame: unitary generator plus
// the adiabatic-frame dissipator mapped back to (H, L, C), plus the
// -k_d [H, [H, .]] dephasing term (decay k_d Omega^2 on L and C). Set
// bath.A = 0 for a dephased unitary stroke.
OpenTrajectory evolve_open(const BlochState& init, const Schedule& sched,
                           const BathSpec& bath, const MeasurementSpec& meas = {},
                           const OdeOptions& opt = {});

}  // namespace qte
