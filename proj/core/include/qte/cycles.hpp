#pragma once

// Cycle assembly and limit-cycle solving for the seven cycle families, plus
// the sudden-limit closed forms and cycle-time sweeps.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qte/linalg.hpp"
#include "qte/open.hpp"
#include "qte/protocols.hpp"
#include "qte/schedule.hpp"
#include "qte/thermo.hpp"
#include "qte/unitary.hpp"

namespace qte {

struct cycle_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CycleKind {
  ElementaryCarnot,
  ElementaryOtto,
  LocalOtto,
  LocalCarnot,
  GlobalCarnot,
  GlobalOtto,
  SuddenOtto
};

std::string cycle_kind_name(CycleKind k);
std::optional<CycleKind> cycle_kind_from_name(const std::string& name);

struct CycleParams {
  CycleKind kind = CycleKind::LocalCarnot;
  double T_h = 10.0;
  double T_c = 5.0;
  // Corner frequencies; zero means "use the family default".
  double Omega1 = 0.0, Omega2 = 0.0, Omega3 = 0.0, Omega4 = 0.0;
  double A = 0.01;
  double spectral_n = 1.0;
  double tau_cyc = 0.0;
  double Phi = 1.5707963267948966;  // per-stroke rotation angle
  int l = 1;                        // frictionless branch for STA strokes
  double k_d = 0.0;                 // dephasing on unitary strokes
  double dt = 1e-3;
  double dT = 1.0;          // global-carnot internal temperature gap
  double Gamma_tau = 0.01;  // sudden-otto: Gamma * tau per isochore
  // sudden-otto: explicit equal kinetic rate on both isochores. Large by
  // default so the free-precession correction (amplified ~Omega/Gamma in the
  // limit cycle) stays subleading at fixed Gamma*tau.
  double Gamma_sudden = 400.0;
  double open_split = 0.5;  // fraction of open-stroke time on the hot side
  double unitary_fraction = 0.5;  // global-otto: share of tau_cyc on unitary strokes
};

struct Stroke {
  StrokeKind kind = StrokeKind::Unitary;
  BathTag bath = BathTag::None;
  BathSpec bath_spec;  // bath seen by this stroke; A = 0 for closed strokes
  bool affine = false;
  Affine3 map;          // valid when affine
  Schedule sched;       // valid when !affine (ODE propagation)
  FrameParams p_start;  // Hamiltonian at stroke entry / exit
  FrameParams p_end;
  double duration = 0.0;
  double k_d = 0.0;
};

struct CycleSpec {
  CycleParams params;
  BathSpec bath_h, bath_c;
  std::vector<Stroke> strokes;
  double tau_cyc = 0.0;
};

// Assemble the stroke list for the requested family; fills defaulted corner
// frequencies and validates corner relations where the family fixes them.
CycleSpec build_cycle(const CycleParams& params);

struct StrokeRun {
  StrokeLedger ledger;
  // Sample grid of the converged pass; single start/end pair for affine strokes.
  std::vector<double> t;
  std::vector<BlochState> states;
};

struct LimitCycle {
  BlochState corner;  // dynamical frame, start of stroke 0
  std::vector<double> history;
  bool converged = false;
  int iterations = 0;
  std::vector<StrokeRun> strokes;
  CycleLedger ledger;
};

// Iterate the concatenated stroke propagation from a thermal guess until the
// cycle-start state repeats within tol (Bloch distance).
LimitCycle run_cycle(const CycleSpec& spec, int max_iters = 400, double tol = 1e-9);

// Composition of the stroke maps for fully affine cycles (throws otherwise).
Affine3 cycle_affine_map(const CycleSpec& spec);

// Net work per cycle in the quasi-static limit: thermal corners joined by
// frictionless adiabats (Otto families) or quasi-static isotherm segments
// (Carnot families). Negative for an engine.
double ideal_cycle_work(const CycleSpec& spec);

// (eta, P) of the sudden Otto cycle from the printed closed forms, uncoupled
// coherence approximation, equal stroke durations.
std::pair<double, double> sudden_otto_closed_forms(double Phi, double Omega_h,
                                                   double Omega_c, double T_h,
                                                   double T_c, double Gamma);

struct SweepRow {
  double tau_cyc = 0.0;
  double eta = 0.0;
  double eta_over_etaC = 0.0;
  double P = 0.0;
  double P_diss = 0.0;
  double sigma_cyc = 0.0;
  CycleMode mode = CycleMode::Dissipator;
  bool converged = false;
  std::string error;
};

// One row per cycle time. The ideal work entering P_diss = |W_ideal|/tau - P
// is the net work of the slowest cycle in the list. Per-point failures are
// recorded in the row, not thrown. workers > 1 runs points in parallel;
// output order follows the input list.
std::vector<SweepRow> sweep_cycle_time(const CycleParams& tmpl,
                                       const std::vector<double>& taus,
                                       int workers = 1);

}  // namespace qte
