#include "qte/unitary.hpp"

#include <cmath>

namespace qte {

Mat3 const_mu_propagator(double mu, double theta, double compression) {
  const double k2 = 1.0 + mu * mu;
  const double kappa = std::sqrt(k2);
  const double c = std::cos(kappa * theta);
  const double s = std::sin(kappa * theta);
  Mat3 u;
  u(0, 0) = 1.0 + mu * mu * c;
  u(0, 1) = kappa * mu * s;
  u(0, 2) = mu * (1.0 - c);
  u(1, 0) = -kappa * mu * s;
  u(1, 1) = k2 * c;
  u(1, 2) = kappa * s;
  u(2, 0) = mu * (1.0 - c);
  u(2, 1) = -kappa * s;
  u(2, 2) = mu * mu + c;
  return (compression / k2) * u;
}

double mu_quantized(int l, double Phi) {
  if (l < 1) throw unitary_error("mu_quantized: l must be a positive integer");
  const double x = 2.0 * M_PI * l / Phi;
  const double d = x * x - 1.0;
  if (d <= 0.0) throw unitary_error("mu_quantized: no finite solution, |Phi| >= 2 pi l");
  return 1.0 / std::sqrt(d);
}

double tau_min_const_mu(double K, double Phi) {
  const double x = 2.0 * M_PI / Phi;
  const double d = x * x - 1.0;
  if (d <= 0.0) throw unitary_error("tau_min_const_mu: |Phi| >= 2 pi");
  return K * std::sqrt(d);
}

double sta_stroke_duration(double Omega_i, double Omega_f, double Phi, int l) {
  if (Omega_i <= 0.0 || Omega_f <= 0.0)
    throw unitary_error("sta_stroke_duration: frequencies must be positive");
  if (l < 1) throw unitary_error("sta_stroke_duration: l must be positive");
  const double full = 2.0 * M_PI * l;
  const double d = full * full - Phi * Phi;
  if (d <= 0.0) throw unitary_error("sta_stroke_duration: |Phi| >= 2 pi l");
  // theta = -Phi/mu with mu = mu_l; linear ramp gives theta = tau (Oi + Of)/2.
  return 2.0 * std::sqrt(d) / (Omega_i + Omega_f);
}

Mat3 sudden_propagator(double Omega_i, double Omega_f, double Phi) {
  if (Omega_i <= 0.0 || Omega_f <= 0.0)
    throw unitary_error("sudden_propagator: frequencies must be positive");
  const double r = Omega_f / Omega_i;
  const double c = std::cos(Phi), s = std::sin(Phi);
  Mat3 m;
  m(0, 0) = r * c;
  m(0, 1) = r * s;
  m(1, 0) = r * s;
  m(1, 1) = -r * c;
  m(2, 2) = r;
  return m;
}

FeatTimes feat_times(double omega_i, double omega_f, double epsilon) {
  if (epsilon <= 0.0) throw unitary_error("feat_times: epsilon must be positive");
  FeatTimes ft;
  if (omega_i == omega_f) return ft;  // zero-length transition

  const double Oi = std::hypot(omega_i, epsilon);
  const double Of = std::hypot(omega_f, epsilon);
  const double e2 = epsilon * epsilon;
  const double q = e2 + omega_i * omega_f;
  const double dw = omega_i - omega_f;
  double zeta = (Oi * Of * q - q * q) / (e2 * dw * dw);
  if (zeta > 1.0 || zeta < -1.0) {
    if (std::abs(zeta) > 1.0 + 1e-9)
      throw unitary_error("feat_times: zeta outside [-1, 1], parameters out of validity");
    zeta = std::clamp(zeta, -1.0, 1.0);
    ft.clamped = true;
  }
  ft.zeta = zeta;
  const double half = 0.5 * std::acos(zeta);
  ft.tau1 = half / Of;
  ft.tau2 = half / Oi;
  return ft;
}

std::vector<BlochState> evolve_unitary(const BlochState& init, const Schedule& sched,
                                       const OdeOptions& opt) {
  if (sched.size() < 2) throw unitary_error("evolve_unitary: schedule needs >= 2 samples");

  FrameParams p0 = FrameParams::from_polar(sched.Omega.front(), sched.phi.front(),
                                           sched.mu.front());
  BlochState cur = frame_rotate(init, Frame::Dynamical, p0);

  auto rhs = [&sched](double t, const std::array<double, 3>& v) {
    const double Om = sched.Omega_at(t);
    const double Omdot = sched.Omega_dot_at(t);
    const double pd = sched.phidot_at(t);  // mu * Omega = -phidot
    const double rot = -pd + sched.upsilon_at(t);
    const double g = Omdot / Om;
    return std::array<double, 3>{g * v[0] + rot * v[1],
                                 g * v[1] - rot * v[0] + Om * v[2],
                                 g * v[2] - Om * v[1]};
  };

  std::vector<BlochState> traj;
  traj.reserve(sched.size());
  traj.push_back(cur);
  std::array<double, 3> v = cur.c;
  for (std::size_t i = 0; i + 1 < sched.size(); ++i) {
    v = integrate_adaptive(rhs, v, sched.t[i], sched.t[i + 1], opt);
    BlochState s;
    s.frame = Frame::Dynamical;
    s.scale = sched.Omega[i + 1];
    s.c = v;
    traj.push_back(s);
  }
  return traj;
}

double adiabatic_work(double H_i, double Omega_i, double Omega_f) {
  return (Omega_f / Omega_i - 1.0) * H_i;
}

}  // namespace qte
