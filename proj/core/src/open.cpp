#include "qte/open.hpp"

#include <cmath>

namespace qte {

double bose_einstein(double x, double T) {
  if (x <= 0.0 || T < 0.0) throw open_error("bose_einstein: gap must be positive");
  if (T == 0.0) return 0.0;
  return 1.0 / std::expm1(x / T);
}

namespace {

double rate_prefactor(double bare_freq, const BathSpec& bath) {
  if (bath.n == 1.0) return 2.0 * bath.A * bare_freq;
  return 2.0 * bath.A * std::pow(bare_freq, bath.n);
}

}  // namespace

DissipatorRates rates_elementary(double Omega, const BathSpec& bath) {
  if (Omega <= 0.0) throw open_error("rates_elementary: Omega must be positive");
  const double N = bose_einstein(Omega, bath.T);
  const double pre = rate_prefactor(Omega, bath);
  return {pre * N, pre * (1.0 + N)};
}

DissipatorRates name_rates(double alpha, double kappa, const BathSpec& bath) {
  if (kappa < 1.0) throw open_error("name_rates: kappa must be >= 1");
  if (alpha <= 0.0) throw open_error("name_rates: alpha must be positive");
  const double N = bose_einstein(alpha, bath.T);
  const double pre = rate_prefactor(alpha / kappa, bath);
  return {pre * N, pre * (1.0 + N)};
}

BlochState evolve_isochore(const BlochState& s, double Omega, const BathSpec& bath,
                           double tau, double k_d) {
  if (s.frame != Frame::Dynamical)
    throw open_error("evolve_isochore: state must be in the dynamical frame");
  if (tau < 0.0) throw open_error("evolve_isochore: tau must be >= 0");
  const Affine3 m = isochore_affine(Omega, bath, tau, k_d);
  BlochState out = s;
  out.c = m(s.c);
  return out;
}

Affine3 isochore_affine(double Omega, const BathSpec& bath, double tau, double k_d) {
  const DissipatorRates r = rates_elementary(Omega, bath);
  const double G = r.Gamma();
  const double Heq = Omega * thermal_polarization(Omega, bath.T);
  const double ep = std::exp(-G * tau);
  const double ec = std::exp(-(0.5 * G + k_d * Omega * Omega) * tau);
  const double c = std::cos(Omega * tau), sn = std::sin(Omega * tau);
  Affine3 m;
  m.M(0, 0) = ep;
  m.b[0] = (1.0 - ep) * Heq;
  // free precession dL/dt = Omega C, dC/dt = -Omega L under the decay envelope
  m.M(1, 1) = ec * c;
  m.M(1, 2) = ec * sn;
  m.M(2, 1) = -ec * sn;
  m.M(2, 2) = ec * c;
  return m;
}

Affine3 sudden_isochore_affine(double Omega, const BathSpec& bath, double tau,
                               bool* validity_ok) {
  const DissipatorRates r = rates_elementary(Omega, bath);
  const double G = r.Gamma();
  if (validity_ok) *validity_ok = (G * tau <= 0.05);
  Affine3 m;
  m.M(0, 0) = 1.0 - G * tau;
  m.b[0] = G * tau * Omega * thermal_polarization(Omega, bath.T);
  m.M(1, 1) = 1.0 - 0.5 * G * tau;
  m.M(1, 2) = -Omega * tau;
  m.M(2, 1) = Omega * tau;
  m.M(2, 2) = 1.0 - 0.5 * G * tau;
  return m;
}

ElementaryTrajectory evolve_elementary(const BlochState& init, const Schedule& sched,
                                       const BathSpec& bath, const OdeOptions& opt) {
  if (sched.size() < 2) throw open_error("evolve_elementary: schedule needs >= 2 samples");
  for (double e : sched.epsilon)
    if (std::abs(e) > 1e-12)
      throw open_error("evolve_elementary: schedule has a transverse field component");

  const FrameParams p0 =
      FrameParams::from_polar(sched.Omega.front(), sched.phi.front());
  const BlochState s0 = frame_rotate(init, Frame::Static, p0);

  auto omega_at = [&sched](double t) {
    // epsilon = 0, so omega = Omega up to the sign carried by phi (= 0 or pi)
    return sched.Omega_at(t) * ((std::cos(sched.phi.front()) < 0.0) ? -1.0 : 1.0);
  };
  auto omega_dot_at = [&sched](double t) {
    return sched.Omega_dot_at(t) * ((std::cos(sched.phi.front()) < 0.0) ? -1.0 : 1.0);
  };

  // y = (Sx, Sy, Sz, W, Q)
  auto rhs = [&](double t, const std::array<double, 5>& y) {
    const double w = omega_at(t);
    const double Om = std::abs(w);
    const DissipatorRates r = rates_elementary(Om, bath);
    const double G = r.Gamma();
    const double seq_z = thermal_polarization(Om, bath.T) * ((w < 0.0) ? -1.0 : 1.0);
    const double wd = omega_dot_at(t);
    return std::array<double, 5>{-w * y[1] - 0.5 * G * y[0],
                                 w * y[0] - 0.5 * G * y[1],
                                 -G * (y[2] - seq_z),
                                 wd * y[2],
                                 -G * w * (y[2] - seq_z)};
  };

  ElementaryTrajectory out;
  out.t = sched.t;
  std::array<double, 5> y{s0.c[0], s0.c[1], s0.c[2], 0.0, 0.0};
  for (std::size_t i = 0; i < sched.size(); ++i) {
    if (i > 0) y = integrate_adaptive(rhs, y, sched.t[i - 1], sched.t[i], opt);
    const double w = sched.omega[i];
    const double Om = sched.Omega[i];
    BlochState st;
    st.frame = Frame::Static;
    st.c = {y[0], y[1], y[2]};
    const FrameParams p = FrameParams::from_polar(Om, sched.phi[i]);
    out.states.push_back(frame_rotate(st, Frame::Dynamical, p));
    const DissipatorRates r = rates_elementary(Om, bath);
    out.power.push_back(omega_dot_at(sched.t[i]) * y[2]);
    out.heat_flux.push_back(
        -r.Gamma() * (w * y[2] - Om * thermal_polarization(Om, bath.T)));
    out.work.push_back(y[3]);
    out.heat.push_back(y[4]);
  }
  return out;
}

double chi_attractor(double alpha, double T) {
  return -std::tanh(0.5 * alpha / T) / std::sqrt(2.0);
}

NameTrajectory evolve_name(const std::array<double, 3>& init_g, const Schedule& sched,
                           const BathSpec& bath, const OdeOptions& opt,
                           double inertial_threshold) {
  if (sched.size() < 2) throw open_error("evolve_name: schedule needs >= 2 samples");

  auto alpha_at = [&sched](double t) {
    return std::hypot(sched.Omega_at(t), sched.phidot_at(t));
  };

  // y = (c_chi, Re c_sigma, Im c_sigma, theta) in the interaction picture.
  auto rhs = [&](double t, const std::array<double, 4>& y) {
    const double Om = sched.Omega_at(t);
    const double a = alpha_at(t);
    const DissipatorRates r = name_rates(a, a / Om, bath);
    const double G = r.Gamma();
    return std::array<double, 4>{-G * (y[0] - chi_attractor(a, bath.T)),
                                 -0.5 * G * y[1], -0.5 * G * y[2], a};
  };

  NameTrajectory out;
  out.t = sched.t;
  out.inertial_measure = sched.inertial_measure();
  out.inertial_ok = (out.inertial_measure <= inertial_threshold);

  std::array<double, 4> y{init_g[0], init_g[1], init_g[2], 0.0};
  for (std::size_t i = 0; i < sched.size(); ++i) {
    if (i > 0) y = integrate_adaptive(rhs, y, sched.t[i - 1], sched.t[i], opt);
    const double c = std::cos(y[3]), sn = std::sin(y[3]);
    // (sx + i sy)(t) = e^{i theta} (u + i w)
    out.g.push_back({y[0], c * y[1] - sn * y[2], sn * y[1] + c * y[2]});
  }
  return out;
}

OpenTrajectory evolve_open(const BlochState& init, const Schedule& sched,
                           const BathSpec& bath, const MeasurementSpec& meas,
                           const OdeOptions& opt) {
  if (sched.size() < 2) throw open_error("evolve_open: schedule needs >= 2 samples");
  if (meas.k_d < 0.0) throw open_error("evolve_open: k_d must be >= 0");

  const FrameParams p0 = FrameParams::from_polar(sched.Omega.front(), sched.phi.front(),
                                                 sched.mu.front());
  const BlochState v0 = frame_rotate(init, Frame::Dynamical, p0);

  // Dissipative part of dv/dt: adiabatic-frame rates mapped back to (H, L, C).
  auto dissipator = [&](double Om, double mu, const std::array<double, 3>& v) {
    std::array<double, 3> d{0.0, 0.0, 0.0};
    if (bath.A > 0.0) {
      const FrameParams p = FrameParams::from_polar(Om, 0.0, mu);
      BlochState sv;
      sv.frame = Frame::Dynamical;
      sv.scale = Om;
      sv.c = v;
      const BlochState ge = frame_rotate(sv, Frame::Eigen, p);
      const DissipatorRates r = name_rates(p.alpha, p.kappa, bath);
      const double G = r.Gamma();
      BlochState gd;
      gd.frame = Frame::Eigen;
      gd.scale = Om;
      gd.c = {-G * (ge.c[0] - chi_attractor(p.alpha, bath.T)), -0.5 * G * ge.c[1],
              -0.5 * G * ge.c[2]};
      d = frame_rotate(gd, Frame::Dynamical, p).c;
    }
    const double kd = meas.k_d * Om * Om;
    d[1] -= kd * v[1];
    d[2] -= kd * v[2];
    return d;
  };

  // y = (H, L, C, W, Q)
  auto rhs = [&](double t, const std::array<double, 5>& y) {
    const double Om = sched.Omega_at(t);
    const double Omdot = sched.Omega_dot_at(t);
    const double pd = sched.phidot_at(t);
    const double mu = -pd / Om;
    const double ups = sched.upsilon_at(t);
    const double g = Omdot / Om;
    const std::array<double, 3> v{y[0], y[1], y[2]};
    const std::array<double, 3> d = dissipator(Om, mu, v);
    const double rot = -pd + ups;
    const double power = g * y[0] + mu * Om * y[1] + sched.upsilon_dot_at(t) * y[2] / Om;
    return std::array<double, 5>{g * y[0] + rot * y[1] + d[0],
                                 g * y[1] - rot * y[0] + Om * y[2] + d[1],
                                 g * y[2] - Om * y[1] + d[2],
                                 power,
                                 d[0]};
  };

  OpenTrajectory out;
  out.t = sched.t;
  std::array<double, 5> y{v0.c[0], v0.c[1], v0.c[2], 0.0, 0.0};
  for (std::size_t i = 0; i < sched.size(); ++i) {
    if (i > 0) y = integrate_adaptive(rhs, y, sched.t[i - 1], sched.t[i], opt);
    BlochState st;
    st.frame = Frame::Dynamical;
    st.scale = sched.Omega[i];
    st.c = {y[0], y[1], y[2]};
    out.states.push_back(st);
    const double Om = sched.Omega[i];
    const double mu = sched.mu[i];
    out.power.push_back(sched.Omega_dot_at(sched.t[i]) / Om * y[0] + mu * Om * y[1] +
                        sched.upsilon_dot_at(sched.t[i]) * y[2] / Om);
    const std::array<double, 3> d = dissipator(Om, mu, {y[0], y[1], y[2]});
    out.heat_flux.push_back(d[0]);
    out.work.push_back(y[3]);
    out.heat.push_back(y[4]);
  }
  return out;
}

}  // namespace qte
