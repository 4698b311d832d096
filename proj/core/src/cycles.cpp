#include "qte/cycles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace qte {

namespace {

double pick(double v, double dflt) { return v > 0.0 ? v : dflt; }

void require(bool ok, const std::string& msg) {
  if (!ok) throw cycle_error(msg);
}

BathSpec closed_bath(const CycleParams& p) {
  // placeholder bath for closed strokes: zero coupling, finite temperature
  return BathSpec{p.T_h, 0.0, p.spectral_n};
}

Stroke affine_isochore(double Omega, double phi, const BathSpec& bath, BathTag tag,
                       double tau) {
  Stroke s;
  s.kind = StrokeKind::Isochore;
  s.bath = tag;
  s.bath_spec = bath;
  s.affine = true;
  s.map = isochore_affine(Omega, bath, tau);
  s.p_start = FrameParams::from_polar(Omega, phi);
  s.p_end = s.p_start;
  s.duration = tau;
  return s;
}

Stroke affine_jump(const Mat3& M, const FrameParams& pi, const FrameParams& pf) {
  Stroke s;
  s.kind = StrokeKind::Unitary;
  s.affine = true;
  s.map = Affine3{M, {}};
  s.p_start = pi;
  s.p_end = pf;
  s.duration = 0.0;
  return s;
}

Stroke ode_stroke(Schedule sched, BathTag tag, const BathSpec& bath, double k_d) {
  Stroke s;
  s.kind = sched.kind;
  s.bath = tag;
  s.bath_spec = bath;
  s.affine = false;
  s.p_start =
      FrameParams::from_polar(sched.Omega.front(), sched.phi.front(), sched.mu.front());
  s.p_end =
      FrameParams::from_polar(sched.Omega.back(), sched.phi.back(), sched.mu.back());
  s.duration = sched.tau();
  s.k_d = k_d;
  s.sched = std::move(sched);
  return s;
}

// Constant-mu unitary stroke: exact matrix map when undisturbed, ODE stroke
// when dephasing acts during the ramp.
Stroke unitary_ramp(double Omega_i, double Omega_f, double phi_i, double phi_f,
                    double tau, double k_d, double dt, const CycleParams& p) {
  if (k_d == 0.0) {
    const double theta = 0.5 * tau * (Omega_i + Omega_f);
    const double mu = -(phi_f - phi_i) / theta;
    Stroke s;
    s.kind = StrokeKind::Unitary;
    s.affine = true;
    s.map = Affine3{const_mu_propagator(mu, theta, Omega_f / Omega_i), {}};
    s.p_start = FrameParams::from_polar(Omega_i, phi_i, mu);
    s.p_end = FrameParams::from_polar(Omega_f, phi_f, mu);
    s.duration = tau;
    return s;
  }
  Schedule sched = const_mu_schedule(Omega_i, Omega_f, phi_i, phi_f, tau, dt);
  return ode_stroke(std::move(sched), BathTag::None, closed_bath(p), k_d);
}

void check_corner_relations(const CycleParams& p) {
  const double r1 = p.Omega4 * p.T_h - p.Omega1 * p.T_c;
  const double r2 = p.Omega2 * p.T_c - p.Omega3 * p.T_h;
  const double scale = p.Omega1 * p.T_h;
  require(std::abs(r1) < 1e-9 * scale && std::abs(r2) < 1e-9 * scale,
          "local-carnot: corner frequencies violate the isotherm endpoint relations "
          "Omega4 T_h = Omega1 T_c, Omega2 T_c = Omega3 T_h");
}

CycleSpec build_elementary_carnot(CycleParams p) {
  p.Omega1 = pick(p.Omega1, 12.0);
  p.Omega2 = pick(p.Omega2, 8.0);
  p.Omega3 = pick(p.Omega3, 4.0);
  p.Omega4 = pick(p.Omega4, 6.0);
  require(p.tau_cyc > 0.0, "elementary-carnot: tau_cyc must be positive");
  CycleSpec spec;
  spec.params = p;
  spec.bath_h = BathSpec{p.T_h, p.A, p.spectral_n};
  spec.bath_c = BathSpec{p.T_c, p.A, p.spectral_n};
  spec.tau_cyc = p.tau_cyc;
  const double tau_h = p.open_split * p.tau_cyc;
  const double tau_c = p.tau_cyc - tau_h;

  auto ramp = [&](double Oa, double Ob, double tau) {
    return make_schedule(
        StrokeKind::Open, tau, p.dt,
        [=](double t) { return Oa + (Ob - Oa) * t / tau; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
  };
  spec.strokes.push_back(
      ode_stroke(ramp(p.Omega1, p.Omega2, tau_h), BathTag::Hot, spec.bath_h, 0.0));
  spec.strokes.push_back(affine_jump((p.Omega3 / p.Omega2) * Mat3::identity(),
                                     FrameParams::from_polar(p.Omega2, 0.0),
                                     FrameParams::from_polar(p.Omega3, 0.0)));
  spec.strokes.push_back(
      ode_stroke(ramp(p.Omega3, p.Omega4, tau_c), BathTag::Cold, spec.bath_c, 0.0));
  spec.strokes.push_back(affine_jump((p.Omega1 / p.Omega4) * Mat3::identity(),
                                     FrameParams::from_polar(p.Omega4, 0.0),
                                     FrameParams::from_polar(p.Omega1, 0.0)));
  return spec;
}

CycleSpec build_elementary_otto(CycleParams p) {
  p.Omega1 = pick(p.Omega1, 8.0);
  p.Omega2 = pick(p.Omega2, p.Omega1);
  p.Omega3 = pick(p.Omega3, 6.0);
  p.Omega4 = pick(p.Omega4, p.Omega3);
  require(p.Omega1 == p.Omega2 && p.Omega3 == p.Omega4,
          "elementary-otto: isochores need Omega1 = Omega2 and Omega3 = Omega4");
  require(p.tau_cyc > 0.0, "elementary-otto: tau_cyc must be positive");
  CycleSpec spec;
  spec.params = p;
  spec.bath_h = BathSpec{p.T_h, p.A, p.spectral_n};
  spec.bath_c = BathSpec{p.T_c, p.A, p.spectral_n};
  spec.tau_cyc = p.tau_cyc;
  const double tau_h = p.open_split * p.tau_cyc;
  const double tau_c = p.tau_cyc - tau_h;
  const double Oh = p.Omega1, Oc = p.Omega3;

  spec.strokes.push_back(affine_isochore(Oh, 0.0, spec.bath_h, BathTag::Hot, tau_h));
  spec.strokes.push_back(affine_jump((Oc / Oh) * Mat3::identity(),
                                     FrameParams::from_polar(Oh, 0.0),
                                     FrameParams::from_polar(Oc, 0.0)));
  spec.strokes.push_back(affine_isochore(Oc, 0.0, spec.bath_c, BathTag::Cold, tau_c));
  spec.strokes.push_back(affine_jump((Oh / Oc) * Mat3::identity(),
                                     FrameParams::from_polar(Oc, 0.0),
                                     FrameParams::from_polar(Oh, 0.0)));
  return spec;
}

CycleSpec build_local_otto(CycleParams p) {
  p.Omega1 = pick(p.Omega1, 8.0);
  p.Omega2 = pick(p.Omega2, p.Omega1);
  p.Omega3 = pick(p.Omega3, 6.0);
  p.Omega4 = pick(p.Omega4, p.Omega3);
  require(p.Omega1 == p.Omega2 && p.Omega3 == p.Omega4,
          "local-otto: isochores need Omega1 = Omega2 and Omega3 = Omega4");
  const double Oh = p.Omega1, Oc = p.Omega3;
  const double tau_adi = sta_stroke_duration(Oh, Oc, p.Phi, p.l);
  require(p.tau_cyc > 2.0 * tau_adi,
          "local-otto: tau_cyc shorter than the two frictionless ramps");
  CycleSpec spec;
  spec.params = p;
  spec.bath_h = BathSpec{p.T_h, p.A, p.spectral_n};
  spec.bath_c = BathSpec{p.T_c, p.A, p.spectral_n};
  spec.tau_cyc = p.tau_cyc;
  const double tau_open = p.tau_cyc - 2.0 * tau_adi;
  const double tau_h = p.open_split * tau_open;
  const double tau_c = tau_open - tau_h;

  spec.strokes.push_back(affine_isochore(Oh, 0.0, spec.bath_h, BathTag::Hot, tau_h));
  spec.strokes.push_back(unitary_ramp(Oh, Oc, 0.0, p.Phi, tau_adi, p.k_d, p.dt, p));
  spec.strokes.push_back(affine_isochore(Oc, p.Phi, spec.bath_c, BathTag::Cold, tau_c));
  spec.strokes.push_back(unitary_ramp(Oc, Oh, p.Phi, 0.0, tau_adi, p.k_d, p.dt, p));
  return spec;
}

CycleSpec build_local_carnot(CycleParams p) {
  p.Omega1 = pick(p.Omega1, 12.0);
  p.Omega2 = pick(p.Omega2, 8.0);
  p.Omega3 = pick(p.Omega3, 4.0);
  p.Omega4 = pick(p.Omega4, 6.0);
  check_corner_relations(p);
  const double tau_B = sta_stroke_duration(p.Omega2, p.Omega3, p.Phi, p.l);
  const double tau_D = sta_stroke_duration(p.Omega4, p.Omega1, p.Phi, p.l);
  require(p.tau_cyc > tau_B + tau_D,
          "local-carnot: tau_cyc shorter than the two frictionless ramps");
  CycleSpec spec;
  spec.params = p;
  spec.bath_h = BathSpec{p.T_h, p.A, p.spectral_n};
  spec.bath_c = BathSpec{p.T_c, p.A, p.spectral_n};
  spec.tau_cyc = p.tau_cyc;
  const double tau_open = p.tau_cyc - tau_B - tau_D;
  const double tau_h = p.open_split * tau_open;
  const double tau_c = tau_open - tau_h;

  STERequest hot{p.Omega1, p.Omega2, tau_h, spec.bath_h,
                 PhiProfileKind::CubicSmoothstep, p.Phi, 0.0, p.dt};
  STERequest cold{p.Omega3, p.Omega4, tau_c, spec.bath_c,
                  PhiProfileKind::CubicSmoothstep, p.Phi, 0.0, p.dt};
  spec.strokes.push_back(
      ode_stroke(synthesize_ste(hot), BathTag::Hot, spec.bath_h, 0.0));
  spec.strokes.push_back(
      unitary_ramp(p.Omega2, p.Omega3, p.Phi, 0.0, tau_B, p.k_d, p.dt, p));
  spec.strokes.push_back(
      ode_stroke(synthesize_ste(cold), BathTag::Cold, spec.bath_c, 0.0));
  spec.strokes.push_back(
      unitary_ramp(p.Omega4, p.Omega1, p.Phi, 0.0, tau_D, p.k_d, p.dt, p));
  return spec;
}

CycleSpec build_global_carnot(CycleParams p) {
  p.Omega1 = pick(p.Omega1, 10.0);
  p.Omega3 = pick(p.Omega3, 6.0);
  const double Th_int = p.T_h - p.dT;
  const double Tc_int = p.T_c + p.dT;
  require(Th_int > Tc_int && Tc_int > 0.0,
          "global-carnot: internal temperatures require 0 < T_c + dT < T_h - dT");
  p.Omega2 = pick(p.Omega2, p.Omega3 * Th_int / Tc_int);
  p.Omega4 = pick(p.Omega4, p.Omega1 * Tc_int / Th_int);
  require(p.tau_cyc > 0.0, "global-carnot: tau_cyc must be positive");
  CycleSpec spec;
  spec.params = p;
  spec.bath_h = BathSpec{p.T_h, p.A, p.spectral_n};
  spec.bath_c = BathSpec{p.T_c, p.A, p.spectral_n};
  spec.tau_cyc = p.tau_cyc;

  // One |mu| for all strokes: each sweeps |phi| by Phi, so stroke durations
  // are proportional to 1/(Omega_a + Omega_b).
  const std::array<std::array<double, 2>, 4> ends{{{p.Omega1, p.Omega2},
                                                   {p.Omega2, p.Omega3},
                                                   {p.Omega3, p.Omega4},
                                                   {p.Omega4, p.Omega1}}};
  double S = 0.0;
  for (const auto& e : ends) S += 1.0 / (e[0] + e[1]);
  std::array<double, 4> tau{};
  for (int i = 0; i < 4; ++i)
    tau[static_cast<size_t>(i)] =
        p.tau_cyc / (S * (ends[static_cast<size_t>(i)][0] + ends[static_cast<size_t>(i)][1]));

  auto open = [&](int i, double phi_a, double phi_b, BathTag tag, const BathSpec& b) {
    Schedule s = const_mu_schedule(ends[static_cast<size_t>(i)][0],
                                   ends[static_cast<size_t>(i)][1], phi_a, phi_b,
                                   tau[static_cast<size_t>(i)], p.dt, StrokeKind::Open);
    return ode_stroke(std::move(s), tag, b, 0.0);
  };
  spec.strokes.push_back(open(0, 0.0, p.Phi, BathTag::Hot, spec.bath_h));
  spec.strokes.push_back(
      unitary_ramp(p.Omega2, p.Omega3, p.Phi, 0.0, tau[1], p.k_d, p.dt, p));
  spec.strokes.push_back(open(2, 0.0, -p.Phi, BathTag::Cold, spec.bath_c));
  spec.strokes.push_back(
      unitary_ramp(p.Omega4, p.Omega1, -p.Phi, 0.0, tau[3], p.k_d, p.dt, p));
  return spec;
}

CycleSpec build_global_otto(CycleParams p) {
  p.Omega1 = pick(p.Omega1, 9.0);
  p.Omega2 = pick(p.Omega2, p.Omega1);
  p.Omega3 = pick(p.Omega3, 20.0 / 3.0);
  p.Omega4 = pick(p.Omega4, p.Omega3);
  require(p.Omega1 == p.Omega2 && p.Omega3 == p.Omega4,
          "global-otto: isochores need Omega1 = Omega2 and Omega3 = Omega4");
  require(p.tau_cyc > 0.0, "global-otto: tau_cyc must be positive");
  require(p.unitary_fraction > 0.0 && p.unitary_fraction < 1.0,
          "global-otto: unitary_fraction must lie in (0, 1)");
  CycleSpec spec;
  spec.params = p;
  spec.bath_h = BathSpec{p.T_h, p.A, p.spectral_n};
  spec.bath_c = BathSpec{p.T_c, p.A, p.spectral_n};
  spec.tau_cyc = p.tau_cyc;
  const double Oh = p.Omega1, Oc = p.Omega3;
  const double tau_u = 0.5 * p.unitary_fraction * p.tau_cyc;
  const double tau_open = (1.0 - p.unitary_fraction) * p.tau_cyc;
  const double tau_h = p.open_split * tau_open;
  const double tau_c = tau_open - tau_h;

  spec.strokes.push_back(affine_isochore(Oh, 0.0, spec.bath_h, BathTag::Hot, tau_h));
  spec.strokes.push_back(unitary_ramp(Oh, Oc, 0.0, p.Phi, tau_u, p.k_d, p.dt, p));
  spec.strokes.push_back(affine_isochore(Oc, p.Phi, spec.bath_c, BathTag::Cold, tau_c));
  spec.strokes.push_back(unitary_ramp(Oc, Oh, p.Phi, 0.0, tau_u, p.k_d, p.dt, p));
  return spec;
}

CycleSpec build_sudden_otto(CycleParams p) {
  p.Omega1 = pick(p.Omega1, 8.0);
  p.Omega2 = pick(p.Omega2, p.Omega1);
  p.Omega3 = pick(p.Omega3, 6.0);
  p.Omega4 = pick(p.Omega4, p.Omega3);
  require(p.Omega1 == p.Omega2 && p.Omega3 == p.Omega4,
          "sudden-otto: isochores need Omega1 = Omega2 and Omega3 = Omega4");
  require(p.Gamma_sudden > 0.0 && p.Gamma_tau > 0.0,
          "sudden-otto: Gamma_sudden and Gamma_tau must be positive");
  const double Oh = p.Omega1, Oc = p.Omega3;
  const double tau_iso = p.Gamma_tau / p.Gamma_sudden;
  CycleSpec spec;
  spec.params = p;
  // equal stroke durations: the jump strokes are booked with the same tau as
  // the isochores, so the cycle time entering the power is 4 tau
  spec.tau_cyc = 4.0 * tau_iso;
  spec.params.tau_cyc = spec.tau_cyc;

  // Equal kinetic rate on both isochores: back out the coupling that yields
  // Gamma = 2 A Omega coth(Omega / 2T) = Gamma_sudden at each bath.
  const double A_h = p.Gamma_sudden * std::tanh(0.5 * Oh / p.T_h) / (2.0 * Oh);
  const double A_c = p.Gamma_sudden * std::tanh(0.5 * Oc / p.T_c) / (2.0 * Oc);
  spec.bath_h = BathSpec{p.T_h, A_h, 1.0};
  spec.bath_c = BathSpec{p.T_c, A_c, 1.0};

  auto sudden_iso = [&](double Om, double phi, const BathSpec& b, BathTag tag) {
    Stroke s;
    s.kind = StrokeKind::Isochore;
    s.bath = tag;
    s.bath_spec = b;
    s.affine = true;
    s.map = sudden_isochore_affine(Om, b, tau_iso);
    s.p_start = FrameParams::from_polar(Om, phi);
    s.p_end = s.p_start;
    s.duration = tau_iso;
    return s;
  };
  spec.strokes.push_back(sudden_iso(Oh, 0.0, spec.bath_h, BathTag::Hot));
  Stroke j1 = affine_jump(sudden_propagator(Oh, Oc, p.Phi),
                          FrameParams::from_polar(Oh, 0.0),
                          FrameParams::from_polar(Oc, p.Phi));
  j1.duration = tau_iso;
  spec.strokes.push_back(j1);
  spec.strokes.push_back(sudden_iso(Oc, p.Phi, spec.bath_c, BathTag::Cold));
  Stroke j2 = affine_jump(sudden_propagator(Oc, Oh, p.Phi),
                          FrameParams::from_polar(Oc, p.Phi),
                          FrameParams::from_polar(Oh, 0.0));
  j2.duration = tau_iso;
  spec.strokes.push_back(j2);
  return spec;
}

// Entropy production of a fixed-Hamiltonian relaxation stroke, integrated
// along the exact relaxation path from the stroke's entry state.
double isochore_sigma(const Stroke& s, const Vec3& v0) {
  if (s.duration <= 0.0 || s.bath_spec.A <= 0.0) return 0.0;
  const double Om = s.p_start.Omega;
  const FrameParams p = FrameParams::from_polar(Om, s.p_start.phi);
  const double Gamma = rates_elementary(Om, s.bath_spec).Gamma();
  const int n = 200;
  const double h = s.duration / n;
  double sum = 0.0, prev = 0.0;
  for (int i = 0; i <= n; ++i) {
    const Vec3 v = isochore_affine(Om, s.bath_spec, i * h)(v0);
    const BlochState ge =
        frame_rotate(BlochState{Frame::Dynamical, v, Om}, Frame::Eigen, p);
    const double rate = entropy_production_rate(ge.c, p.alpha, Gamma, s.bath_spec.T);
    if (i > 0) sum += 0.5 * (rate + prev) * h;
    prev = rate;
  }
  return sum;
}

StrokeLedger affine_ledger(const Stroke& s, const Vec3& v0, const Vec3& v1) {
  StrokeLedger led;
  led.kind = s.kind;
  led.bath = s.bath;
  led.dE = v1[0] - v0[0];
  if (s.kind == StrokeKind::Isochore) {
    led.Q = led.dE;
    led.Sigma = isochore_sigma(s, v0);
  } else {
    led.W = led.dE;
  }
  const BlochState a{Frame::Dynamical, v0, s.p_start.Omega};
  const BlochState b{Frame::Dynamical, v1, s.p_end.Omega};
  led.dS_vn = vn_entropy(b) - vn_entropy(a);
  led.dS_energy = energy_entropy(b, s.p_end) - energy_entropy(a, s.p_start);
  return led;
}

double bloch_distance(const Vec3& a, const Vec3& b, double Omega) {
  double s = 0.0;
  for (size_t i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s) / Omega;
}

Vec3 advance_cycle(const CycleSpec& spec, Vec3 v, std::vector<StrokeRun>* runs) {
  for (const auto& s : spec.strokes) {
    if (s.affine) {
      const Vec3 w = s.map(v);
      if (runs) {
        StrokeRun run;
        run.ledger = affine_ledger(s, v, w);
        run.t = {0.0, s.duration};
        run.states = {BlochState{Frame::Dynamical, v, s.p_start.Omega},
                      BlochState{Frame::Dynamical, w, s.p_end.Omega}};
        runs->push_back(std::move(run));
      }
      v = w;
    } else {
      const BlochState init{Frame::Dynamical, v, s.sched.Omega.front()};
      const OpenTrajectory traj =
          evolve_open(init, s.sched, s.bath_spec, MeasurementSpec{s.k_d});
      if (runs) {
        StrokeRun run;
        run.ledger = ledger_from_open(traj, s.sched, s.bath_spec, s.bath);
        run.t = traj.t;
        run.states = traj.states;
        runs->push_back(std::move(run));
      }
      v = traj.states.back().c;
    }
  }
  return v;
}

}  // namespace

std::string cycle_kind_name(CycleKind k) {
  switch (k) {
    case CycleKind::ElementaryCarnot: return "elementary-carnot";
    case CycleKind::ElementaryOtto: return "elementary-otto";
    case CycleKind::LocalOtto: return "local-otto";
    case CycleKind::LocalCarnot: return "local-carnot";
    case CycleKind::GlobalCarnot: return "global-carnot";
    case CycleKind::GlobalOtto: return "global-otto";
    case CycleKind::SuddenOtto: return "sudden-otto";
  }
  return "?";
}

std::optional<CycleKind> cycle_kind_from_name(const std::string& name) {
  for (CycleKind k : {CycleKind::ElementaryCarnot, CycleKind::ElementaryOtto,
                      CycleKind::LocalOtto, CycleKind::LocalCarnot,
                      CycleKind::GlobalCarnot, CycleKind::GlobalOtto,
                      CycleKind::SuddenOtto})
    if (cycle_kind_name(k) == name) return k;
  return std::nullopt;
}

CycleSpec build_cycle(const CycleParams& params) {
  require(params.T_h > 0.0 && params.T_c > 0.0 && params.T_h > params.T_c,
          "build_cycle: temperatures must satisfy T_h > T_c > 0");
  require(params.A >= 0.0, "build_cycle: bath coupling must be non-negative");
  require(params.dt > 0.0, "build_cycle: dt must be positive");
  require(params.k_d >= 0.0, "build_cycle: k_d must be non-negative");
  switch (params.kind) {
    case CycleKind::ElementaryCarnot: return build_elementary_carnot(params);
    case CycleKind::ElementaryOtto: return build_elementary_otto(params);
    case CycleKind::LocalOtto: return build_local_otto(params);
    case CycleKind::LocalCarnot: return build_local_carnot(params);
    case CycleKind::GlobalCarnot: return build_global_carnot(params);
    case CycleKind::GlobalOtto: return build_global_otto(params);
    case CycleKind::SuddenOtto: return build_sudden_otto(params);
  }
  throw cycle_error("build_cycle: unknown cycle kind");
}

Affine3 cycle_affine_map(const CycleSpec& spec) {
  Affine3 total;
  for (const auto& s : spec.strokes) {
    if (!s.affine)
      throw cycle_error("cycle_affine_map: cycle contains a non-affine stroke");
    total = compose(s.map, total);
  }
  return total;
}

LimitCycle run_cycle(const CycleSpec& spec, int max_iters, double tol) {
  require(!spec.strokes.empty(), "run_cycle: empty stroke list");
  const double Om0 = spec.strokes.front().p_start.Omega;

  double T0 = spec.params.T_h;
  for (const auto& s : spec.strokes)
    if (s.bath != BathTag::None) {
      T0 = (s.bath == BathTag::Hot) ? spec.params.T_h : spec.params.T_c;
      break;
    }

  LimitCycle lc;
  const bool all_affine =
      std::all_of(spec.strokes.begin(), spec.strokes.end(),
                  [](const Stroke& s) { return s.affine; });
  Vec3 v{};
  if (all_affine) {
    v = affine_fixed_point(cycle_affine_map(spec));
    lc.history.push_back(bloch_distance(advance_cycle(spec, v, nullptr), v, Om0));
    lc.converged = true;
    lc.iterations = 0;
  } else {
    v = thermal_state(Om0, T0).c;
    for (int it = 1; it <= max_iters; ++it) {
      const Vec3 w = advance_cycle(spec, v, nullptr);
      const double dist = bloch_distance(w, v, Om0);
      lc.history.push_back(dist);
      lc.iterations = it;
      v = w;
      if (dist < tol) {
        lc.converged = true;
        break;
      }
    }
  }

  lc.corner = BlochState{Frame::Dynamical, v, Om0};
  advance_cycle(spec, v, &lc.strokes);
  std::vector<StrokeLedger> leds;
  leds.reserve(lc.strokes.size());
  for (const auto& r : lc.strokes) leds.push_back(r.ledger);
  lc.ledger = cycle_ledger(leds, spec.tau_cyc, spec.params.T_h, spec.params.T_c);
  return lc;
}

double ideal_cycle_work(const CycleSpec& spec) {
  const CycleParams& p = spec.params;
  auto Seq = [](double Om, double T) { return thermal_polarization(Om, T); };
  // quasi-static open-stroke work: integral of S_eq dOmega = -T d(ln cosh)
  auto W_iso = [](double Oa, double Ob, double T) {
    return -T * (std::log(std::cosh(0.5 * Ob / T)) - std::log(std::cosh(0.5 * Oa / T)));
  };
  switch (p.kind) {
    case CycleKind::ElementaryOtto:
    case CycleKind::LocalOtto:
    case CycleKind::GlobalOtto:
    case CycleKind::SuddenOtto: {
      const double Oh = p.Omega1, Oc = p.Omega3;
      return (Oh - Oc) * (Seq(Oc, p.T_c) - Seq(Oh, p.T_h));
    }
    case CycleKind::ElementaryCarnot:
    case CycleKind::LocalCarnot:
    case CycleKind::GlobalCarnot:
      return W_iso(p.Omega1, p.Omega2, p.T_h) +
             (p.Omega3 - p.Omega2) * Seq(p.Omega2, p.T_h) +
             W_iso(p.Omega3, p.Omega4, p.T_c) +
             (p.Omega1 - p.Omega4) * Seq(p.Omega4, p.T_c);
  }
  throw cycle_error("ideal_cycle_work: unknown cycle kind");
}

std::pair<double, double> sudden_otto_closed_forms(double Phi, double Omega_h,
                                                   double Omega_c, double T_h,
                                                   double T_c, double Gamma) {
  const double Sh = thermal_polarization(Omega_h, T_h);
  const double Sc = thermal_polarization(Omega_c, T_c);
  const double c1 = std::cos(Phi);
  const double c2 = std::cos(2.0 * Phi);
  const double num_eta =
      8.0 * c1 * Omega_h * Omega_c * (Sc * Omega_h + Sh * Omega_c) -
      Omega_c * Omega_h * (Omega_h * Sh + Omega_c * Sc) * (c2 + 7.0);
  const double den_eta =
      Omega_h * (8.0 * Sc * Omega_c * Omega_h * c1 -
                 Sh * Omega_h * Omega_c * (c2 + 7.0));
  const double eta = num_eta / den_eta;
  const double P = Gamma *
                   (8.0 * c1 * (Sc * Omega_h + Sh * Omega_c) -
                    (Omega_c * Sc + Omega_h * Sh) * (c2 + 7.0)) /
                   (4.0 * (c2 - 17.0));
  return {eta, P};
}

std::vector<SweepRow> sweep_cycle_time(const CycleParams& tmpl,
                                       const std::vector<double>& taus, int workers) {
  std::vector<SweepRow> rows(taus.size());
  if (taus.empty()) return rows;
  const double eta_C = 1.0 - tmpl.T_c / tmpl.T_h;

  // Quasi-static reference work for the dissipated-power column.
  double W_ideal = 0.0;
  std::string ideal_error;
  {
    CycleParams p = tmpl;
    p.tau_cyc = *std::max_element(taus.begin(), taus.end());
    try {
      W_ideal = ideal_cycle_work(build_cycle(p));
    } catch (const std::exception& e) {
      ideal_error = std::string("ideal-work reference failed: ") + e.what();
    }
  }

  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= taus.size()) return;
      SweepRow& r = rows[i];
      r.tau_cyc = taus[i];
      CycleParams p = tmpl;
      p.tau_cyc = taus[i];
      try {
        const LimitCycle lc = run_cycle(build_cycle(p));
        r.eta = lc.ledger.eta;
        r.eta_over_etaC = lc.ledger.eta / eta_C;
        r.P = lc.ledger.power;
        r.P_diss = std::abs(W_ideal) / lc.ledger.tau_cyc - lc.ledger.power;
        r.sigma_cyc = lc.ledger.sigma_cyc;
        r.mode = lc.ledger.mode;
        r.converged = lc.converged;
        if (!ideal_error.empty()) r.error = ideal_error;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };

  const int n_threads = std::max(1, workers);
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace qte
