#include "qte/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace qte {

std::string frame_name(Frame f) {
  switch (f) {
    case Frame::Static: return "static";
    case Frame::Dynamical: return "dynamical";
    case Frame::Eigen: return "eigen";
  }
  return "?";
}

FrameParams FrameParams::from_fields(double omega, double epsilon, double mu) {
  const double Omega = std::hypot(omega, epsilon);
  if (Omega <= 0.0) throw state_error("frame params: Omega must be positive");
  FrameParams p;
  p.omega = omega;
  p.epsilon = epsilon;
  p.Omega = Omega;
  p.phi = std::atan2(epsilon, omega);  // reduces to arccos(omega/Omega) for epsilon >= 0
  p.mu = mu;
  p.kappa = std::sqrt(1.0 + mu * mu);
  p.alpha = p.kappa * Omega;
  p.xi = std::acos(1.0 / p.kappa);
  return p;
}

FrameParams FrameParams::from_polar(double Omega, double phi, double mu) {
  if (Omega <= 0.0) throw state_error("frame params: Omega must be positive");
  FrameParams p;
  p.Omega = Omega;
  p.phi = phi;
  p.omega = Omega * std::cos(phi);
  p.epsilon = Omega * std::sin(phi);
  p.mu = mu;
  p.kappa = std::sqrt(1.0 + mu * mu);
  p.alpha = p.kappa * Omega;
  p.xi = std::acos(1.0 / p.kappa);
  return p;
}

double polarization(const BlochState& s) {
  const double n = std::sqrt(s.c[0] * s.c[0] + s.c[1] * s.c[1] + s.c[2] * s.c[2]);
  switch (s.frame) {
    case Frame::Static: return n;
    case Frame::Dynamical: return n / s.scale;
    case Frame::Eigen: return n / std::sqrt(2.0);
  }
  return n;
}

double thermal_polarization(double Omega, double T) {
  if (Omega <= 0.0 || T <= 0.0)
    throw state_error("thermal state: Omega and T must be positive");
  return -0.5 * std::tanh(0.5 * Omega / T);
}

BlochState thermal_state(double Omega, double T) {
  BlochState s;
  s.frame = Frame::Dynamical;
  s.scale = Omega;
  s.c = {Omega * thermal_polarization(Omega, T), 0.0, 0.0};
  return s;
}

namespace {

// v = Omega * Ry(phi) * s  with  H = Omega(sin phi Sx + cos phi Sz),
// L = Omega(sin phi Sz - cos phi Sx), C = Omega Sy.
std::array<double, 3> static_to_dyn(const std::array<double, 3>& s, const FrameParams& p) {
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  return {p.Omega * (sp * s[0] + cp * s[2]),
          p.Omega * (-cp * s[0] + sp * s[2]),
          p.Omega * s[1]};
}

std::array<double, 3> dyn_to_static(const std::array<double, 3>& v, const FrameParams& p) {
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  return {(sp * v[0] - cp * v[1]) / p.Omega,
          v[2] / p.Omega,
          (cp * v[0] + sp * v[1]) / p.Omega};
}

// g' = (sqrt(2)/Omega) * RL(xi) * v:
//   <chi>     = sqrt(2)/(kappa Omega) (<H> + mu <C>)
//   <sigma_x> = sqrt(2)/(kappa Omega) (-mu <H> + <C>)
//   <sigma_y> = sqrt(2)/Omega <L>
std::array<double, 3> dyn_to_eigen(const std::array<double, 3>& v, const FrameParams& p) {
  const double f = std::sqrt(2.0) / (p.kappa * p.Omega);
  return {f * (v[0] + p.mu * v[2]),
          f * (-p.mu * v[0] + v[2]),
          std::sqrt(2.0) / p.Omega * v[1]};
}

std::array<double, 3> eigen_to_dyn(const std::array<double, 3>& g, const FrameParams& p) {
  const double f = p.Omega / (std::sqrt(2.0) * p.kappa);
  return {f * (g[0] - p.mu * g[1]),
          p.Omega / std::sqrt(2.0) * g[2],
          f * (p.mu * g[0] + g[1])};
}

}  // namespace

BlochState frame_rotate(const BlochState& s, Frame to, const FrameParams& p) {
  if (s.frame != Frame::Static && s.scale > 0.0 &&
      std::abs(s.scale - p.Omega) > 1e-9 * std::max(1.0, p.Omega))
    throw state_error("frame_rotate: params Omega does not match state scale");

  std::array<double, 3> v;  // dynamical-frame staging
  switch (s.frame) {
    case Frame::Static: v = static_to_dyn(s.c, p); break;
    case Frame::Dynamical: v = s.c; break;
    case Frame::Eigen: v = eigen_to_dyn(s.c, p); break;
  }

  BlochState out;
  out.frame = to;
  out.scale = (to == Frame::Static) ? 0.0 : p.Omega;
  switch (to) {
    case Frame::Static: out.c = dyn_to_static(v, p); break;
    case Frame::Dynamical: out.c = v; break;
    case Frame::Eigen: out.c = dyn_to_eigen(v, p); break;
  }
  return out;
}

namespace {

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

}  // namespace

double vn_entropy(const BlochState& s) {
  const double r = polarization(s);
  if (r > 0.5 + 1e-12) throw state_error("vn_entropy: polarization exceeds 1/2");
  return binary_entropy(std::min(0.5 - r, 1.0));
}

double energy_entropy(const BlochState& s, const FrameParams& p) {
  const BlochState v = frame_rotate(s, Frame::Dynamical, p);
  const double sh = v.c[0] / p.Omega;
  if (std::abs(sh) > 0.5 + 1e-12) throw state_error("energy_entropy: invalid state");
  return binary_entropy(std::clamp(0.5 - sh, 0.0, 1.0));
}

double divergence(const BlochState& s, const FrameParams& p) {
  return energy_entropy(s, p) - vn_entropy(s);
}

double coherence_measure(const BlochState& s, const FrameParams& p) {
  const BlochState v = frame_rotate(s, Frame::Dynamical, p);
  return std::sqrt(v.c[1] * v.c[1] + v.c[2] * v.c[2]) / p.Omega;
}

double casimir_companion(const BlochState& s, const FrameParams& p) {
  const BlochState v = frame_rotate(s, Frame::Dynamical, p);
  return (v.c[0] * v.c[0] + v.c[1] * v.c[1] + v.c[2] * v.c[2]) / (p.Omega * p.Omega);
}

double gibbs_f(double r) {
  const double x = r / std::sqrt(2.0);
  if (x < 1e-8) return -0.5 * (1.0 - x * x / 3.0);
  return -std::tanh(x) / (2.0 * x);
}

double gibbs_s(double k) {
  const double x = std::sqrt(2.0) * k;
  if (x < 1e-8) return -2.0 * (1.0 + x * x / 3.0);
  return std::log((1.0 - x) / (1.0 + x)) / x;
}

GibbsParams gibbs_from_expectations(double c_chi, double c_sx, double c_sy) {
  const double k = std::sqrt(c_chi * c_chi + c_sx * c_sx + c_sy * c_sy);
  if (k >= 1.0 / std::sqrt(2.0))
    throw state_error("gibbs_from_expectations: state on boundary of state space");
  const double s = gibbs_s(k);
  GibbsParams g;
  g.beta = s * c_chi;
  g.gamma_x = s * c_sx;
  g.gamma_y = s * c_sy;
  g.r = std::sqrt(g.beta * g.beta + g.gamma_x * g.gamma_x + g.gamma_y * g.gamma_y);
  return g;
}

std::array<double, 3> expectations_from_gibbs(const GibbsParams& g) {
  const double f = gibbs_f(g.r);
  return {f * g.beta, f * g.gamma_x, f * g.gamma_y};
}

}  // namespace qte
