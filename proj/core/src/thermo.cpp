#include "qte/thermo.hpp"

#include <cmath>

#include "qte/density.hpp"

namespace qte {

std::string cycle_mode_name(CycleMode m) {
  switch (m) {
    case CycleMode::Engine: return "engine";
    case CycleMode::Accelerator: return "accelerator";
    case CycleMode::Dissipator: return "dissipator";
    case CycleMode::Refrigerator: return "refrigerator";
  }
  return "?";
}

CycleMode classify_mode(double W, double Q_h, double Q_c) {
  if (W < 0.0) return CycleMode::Engine;
  if (Q_c > 0.0) return CycleMode::Refrigerator;
  if (Q_h > 0.0) return CycleMode::Accelerator;
  return CycleMode::Dissipator;
}

CycleLedger cycle_ledger(const std::vector<StrokeLedger>& strokes, double tau_cyc,
                         double T_h, double T_c) {
  CycleLedger c;
  c.strokes = strokes;
  c.tau_cyc = tau_cyc;
  for (const auto& s : strokes) {
    c.W += s.W;
    if (s.bath == BathTag::Hot) c.Q_h += s.Q;
    if (s.bath == BathTag::Cold) c.Q_c += s.Q;
  }
  c.sigma_cyc = -c.Q_h / T_h - c.Q_c / T_c;
  c.eta = (c.Q_h != 0.0) ? -c.W / c.Q_h : 0.0;
  c.power = (tau_cyc > 0.0) ? -c.W / tau_cyc : 0.0;
  c.mode = classify_mode(c.W, c.Q_h, c.Q_c);
  return c;
}

namespace {

// rho = I/2 + (g . sigma)/sqrt(2) in the orthonormal eigenoperator basis.
Mat2 density_from_eigen(const std::array<double, 3>& g) {
  const double f = 1.0 / std::sqrt(2.0);
  Mat2 rho = 0.5 * identity2();
  rho = rho + (2.0 * f * g[1]) * spin_x() + (2.0 * f * g[2]) * spin_y() +
        (2.0 * f * g[0]) * spin_z();
  return rho;
}

double entropy_from_state(const BlochState& s) { return vn_entropy(s); }

}  // namespace

double entropy_production_rate(const std::array<double, 3>& g, double alpha,
                               double Gamma, double T) {
  const double chi_ia = chi_attractor(alpha, T);
  const Mat2 rho = density_from_eigen(g);
  const Mat2 rho_ia = density_from_eigen({chi_ia, 0.0, 0.0});
  // dissipator in the eigenoperator components
  const std::array<double, 3> gdot{-Gamma * (g[0] - chi_ia), -0.5 * Gamma * g[1],
                                   -0.5 * Gamma * g[2]};
  const Mat2 ldot = density_from_eigen(gdot) - 0.5 * identity2();
  const Mat2 diff = hermitian_log(rho) - hermitian_log(rho_ia);
  return -trace(ldot * diff).real();
}

double sigma_chi_closed(double beta, double alpha, double k_down, double T) {
  // force (1/T' - 1/T) times heat flux (alpha/2) Gamma (tanh(alpha/2T') -
  // tanh(alpha/2T)); Gamma = k_down (1 + e^{-alpha/T}) by detailed balance
  const double Tp = alpha / (std::sqrt(2.0) * beta);
  const double Gamma = k_down * (1.0 + std::exp(-alpha / T));
  return Gamma * 0.5 * alpha *
         (std::tanh(beta / std::sqrt(2.0)) - std::tanh(0.5 * alpha / T)) *
         (1.0 / Tp - 1.0 / T);
}

double sigma_chi_high_T(double beta, double alpha, double k_down, double T) {
  const double Tp = alpha / (std::sqrt(2.0) * beta);
  const double Gamma = k_down * (1.0 + std::exp(-alpha / T));
  const double d = 1.0 / Tp - 1.0 / T;
  return Gamma * 0.25 * alpha * alpha * d * d;
}

FluxForce flux_force_breakdown(const std::array<double, 3>& g, double alpha,
                               double Gamma, double T) {
  const GibbsParams gp = gibbs_from_expectations(g[0], g[1], g[2]);
  FluxForce ff;
  ff.T_chi = alpha / (std::sqrt(2.0) * gp.beta);
  ff.F_chi = 1.0 / ff.T_chi - 1.0 / T;
  ff.F_sx = gp.gamma_x / alpha;
  ff.F_sy = gp.gamma_y / alpha;
  ff.J_chi = -alpha * Gamma / std::sqrt(2.0) * (g[0] - chi_attractor(alpha, T));
  ff.J_sx = -0.5 * alpha * Gamma * g[1];
  ff.J_sy = -0.5 * alpha * Gamma * g[2];
  return ff;
}

double onsager_coefficient(double alpha, double Gamma) {
  return Gamma * 0.25 * alpha * alpha;
}

double availability(double E, double S, double T0) { return E - T0 * S; }

namespace {

void endpoint_entropies(StrokeLedger& led, const BlochState& first,
                        const BlochState& last, const Schedule& sched) {
  const FrameParams pi = FrameParams::from_polar(sched.Omega.front(), sched.phi.front(),
                                                 sched.mu.front());
  const FrameParams pf = FrameParams::from_polar(sched.Omega.back(), sched.phi.back(),
                                                 sched.mu.back());
  led.dS_vn = entropy_from_state(last) - entropy_from_state(first);
  led.dS_energy = energy_entropy(last, pf) - energy_entropy(first, pi);
  led.dE = last.c[0] - first.c[0];
}

}  // namespace

StrokeLedger ledger_from_open(const OpenTrajectory& traj, const Schedule& sched,
                              const BathSpec& bath, BathTag tag) {
  if (traj.t.size() != sched.size() || traj.states.empty())
    throw thermo_error("ledger_from_open: trajectory and schedule grids differ");
  StrokeLedger led;
  led.kind = sched.kind;
  led.bath = tag;
  led.W = traj.work.back();
  led.Q = traj.heat.back();
  endpoint_entropies(led, traj.states.front(), traj.states.back(), sched);

  // trapezoid over the samplewise entropy production rate
  double sig = 0.0, prev_rate = 0.0;
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const FrameParams p =
        FrameParams::from_polar(sched.Omega[i], sched.phi[i], sched.mu[i]);
    const BlochState ge = frame_rotate(traj.states[i], Frame::Eigen, p);
    const DissipatorRates r = name_rates(p.alpha, p.kappa, bath);
    const double rate = entropy_production_rate(ge.c, p.alpha, r.Gamma(), bath.T);
    if (i > 0) sig += 0.5 * (rate + prev_rate) * (sched.t[i] - sched.t[i - 1]);
    prev_rate = rate;
  }
  led.Sigma = sig;
  return led;
}

StrokeLedger ledger_from_unitary(const std::vector<BlochState>& traj,
                                 const Schedule& sched) {
  if (traj.size() != sched.size() || traj.empty())
    throw thermo_error("ledger_from_unitary: trajectory and schedule grids differ");
  StrokeLedger led;
  led.kind = sched.kind;
  led.bath = BathTag::None;
  endpoint_entropies(led, traj.front(), traj.back(), sched);
  led.W = led.dE;  // no heat on a closed stroke
  led.Q = 0.0;
  led.Sigma = 0.0;
  return led;
}

}  // namespace qte
