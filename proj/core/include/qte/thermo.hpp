#pragma once

// Thermodynamic accounting: first-law ledgers per stroke, entropy production
// and its flux-force decomposition, linear response, availability.

#include <array>
#include <vector>

#include "qte/bloch.hpp"
#include "qte/open.hpp"
#include "qte/schedule.hpp"
#include "qte/unitary.hpp"

namespace qte {

struct thermo_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BathTag { None, Hot, Cold };

struct StrokeLedger {
  StrokeKind kind = StrokeKind::Unitary;
  BathTag bath = BathTag::None;
  double W = 0.0;       // work on the medium (positive = invested)
  double Q = 0.0;       // heat into the medium
  double dE = 0.0;
  double dS_vn = 0.0;
  double dS_energy = 0.0;
  double Sigma = 0.0;   // integrated entropy production
};

enum class CycleMode { Engine, Accelerator, Dissipator, Refrigerator };

std::string cycle_mode_name(CycleMode m);

// Engine does net work (W < 0 on the medium); otherwise the sign of the cold
// and hot heats separates refrigerator, accelerator, and dissipator.
CycleMode classify_mode(double W, double Q_h, double Q_c);

struct CycleLedger {
  std::vector<StrokeLedger> strokes;
  double tau_cyc = 0.0;
  double W = 0.0;
  double Q_h = 0.0;
  double Q_c = 0.0;
  double sigma_cyc = 0.0;  // -Q_h/T_h - Q_c/T_c
  double eta = 0.0;        // -W / Q_h, engine convention
  double power = 0.0;      // -W / tau_cyc
  CycleMode mode = CycleMode::Dissipator;
};

CycleLedger cycle_ledger(const std::vector<StrokeLedger>& strokes, double tau_cyc,
                         double T_h, double T_c);

// Per-stroke ledgers. Work and heat come from the quadratures carried by the
// trajectory; entropies from the endpoint states; Sigma by trapezoid over the
// samplewise entropy production rate.
StrokeLedger ledger_from_open(const OpenTrajectory& traj, const Schedule& sched,
                              const BathSpec& bath, BathTag tag);
StrokeLedger ledger_from_unitary(const std::vector<BlochState>& traj,
                                 const Schedule& sched);

// Entropy production rate -tr(L[rho](ln rho - ln rho_ia)) for an eigenframe
// state g = (<chi>, <sigma_x>, <sigma_y>) relaxing at rate Gamma toward the
// attractor at gap alpha and bath temperature T. Evaluated through the 2x2
// density-matrix representation; eigenvalues floored at 1e-14.
double entropy_production_rate(const std::array<double, 3>& g, double alpha,
                               double Gamma, double T);

// Closed form of the coherence-free entropy production rate in terms of the
// Gibbs multiplier beta of rho = Z^-1 exp(-beta chi):
//   Gamma (alpha/2) (tanh(alpha/2T') - tanh(alpha/2T)) (1/T' - 1/T),
// with T' = alpha / (sqrt(2) beta) and Gamma = k_down (1 + e^{-alpha/T}).
// Agrees with entropy_production_rate on coherence-free states.
double sigma_chi_closed(double beta, double alpha, double k_down, double T);

// High-temperature limit Gamma (alpha/2)^2 (1/T' - 1/T)^2, i.e. L F^2 with the
// linear-response coefficient L.
double sigma_chi_high_T(double beta, double alpha, double k_down, double T);

struct FluxForce {
  double F_chi = 0.0, F_sx = 0.0, F_sy = 0.0;
  double J_chi = 0.0, J_sx = 0.0, J_sy = 0.0;
  double T_chi = 0.0;  // effective temperature alpha / (sqrt(2) beta)
  double total() const { return F_chi * J_chi + F_sx * J_sx + F_sy * J_sy; }
};

// Forces from the maximum-entropy multipliers of g, fluxes from the relaxation
// rates. total() equals entropy_production_rate identically.
FluxForce flux_force_breakdown(const std::array<double, 3>& g, double alpha,
                               double Gamma, double T);

// Linear-response coefficient L = Gamma (alpha/2)^2; J_l / F_l -> L as
// alpha/T -> 0.
double onsager_coefficient(double alpha, double Gamma);

// Availability E - T0 S.
double availability(double E, double S, double T0);

}  // namespace qte
