#include <cmath>

#include "doctest.h"
#include "qte/cycles.hpp"

using namespace qte;

namespace {
constexpr double kPi = 3.14159265358979323846;

CycleParams figure_params(CycleKind k) {
  CycleParams p;
  p.kind = k;
  p.A = 0.005;
  switch (k) {
    case CycleKind::ElementaryCarnot: p.tau_cyc = 120.0; break;
    case CycleKind::ElementaryOtto: p.tau_cyc = 80.0; break;
    case CycleKind::LocalOtto: p.tau_cyc = 30.0; break;
    case CycleKind::LocalCarnot: p.tau_cyc = 24.0 * 2.0 * kPi / 4.0; break;
    case CycleKind::GlobalCarnot: p.tau_cyc = 60.0 * 2.0 * kPi / 6.0; break;
    case CycleKind::GlobalOtto: p.tau_cyc = 40.0 * 2.0 * kPi / (20.0 / 3.0); break;
    case CycleKind::SuddenOtto: break;  // times fixed by Gamma_tau
  }
  return p;
}

// relative first-law residual of one stroke
double first_law_residual(const StrokeLedger& l) {
  const double scale = std::max({std::abs(l.dE), std::abs(l.W), std::abs(l.Q), 1e-3});
  return std::abs(l.dE - l.W - l.Q) / scale;
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (CycleKind k :
       {CycleKind::ElementaryCarnot, CycleKind::ElementaryOtto, CycleKind::LocalOtto,
        CycleKind::LocalCarnot, CycleKind::GlobalCarnot, CycleKind::GlobalOtto,
        CycleKind::SuddenOtto}) {
    auto back = cycle_kind_from_name(cycle_kind_name(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK_FALSE(cycle_kind_from_name("nope").has_value());
}

TEST_CASE("family defaults and corner relations") {
  {
    auto s = build_cycle(figure_params(CycleKind::LocalCarnot));
    CHECK(s.params.Omega1 == 12.0);
    CHECK(s.params.Omega2 == 8.0);
    CHECK(s.params.Omega3 == 4.0);
    CHECK(s.params.Omega4 == 6.0);
    // thermalization corners share effective temperature across the adiabats
    CHECK(s.params.Omega4 * s.params.T_h ==
          doctest::Approx(s.params.Omega1 * s.params.T_c).epsilon(1e-12));
    CHECK(s.params.Omega2 * s.params.T_c ==
          doctest::Approx(s.params.Omega3 * s.params.T_h).epsilon(1e-12));
    CHECK(s.strokes.size() == 4);
  }
  {
    CycleParams p = figure_params(CycleKind::LocalCarnot);
    p.Omega1 = 11.0;  // breaks the corner relation
    CHECK_THROWS_AS(build_cycle(p), cycle_error);
  }
  {
    auto s = build_cycle(figure_params(CycleKind::GlobalOtto));
    CHECK(s.params.Omega1 == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(s.params.Omega3 == doctest::Approx(20.0 / 3.0).epsilon(1e-12));
  }
  {
    auto s = build_cycle(figure_params(CycleKind::GlobalCarnot));
    // internal temperature gap fixes the isotherm endpoints
    const double Tph = s.params.T_h - s.params.dT, Tpc = s.params.T_c + s.params.dT;
    CHECK(s.params.Omega2 ==
          doctest::Approx(s.params.Omega3 * Tph / Tpc).epsilon(1e-12));
    CHECK(s.params.Omega4 ==
          doctest::Approx(s.params.Omega1 * Tpc / Tph).epsilon(1e-12));
  }
  {
    CycleParams p;
    p.kind = CycleKind::LocalOtto;
    p.tau_cyc = 0.5;  // shorter than the two frictionless ramps alone
    CHECK_THROWS_AS(build_cycle(p), cycle_error);
  }
}

TEST_CASE("local otto is friction-free") {
  CycleParams p = figure_params(CycleKind::LocalOtto);
  auto lc = run_cycle(build_cycle(p));
  CHECK(lc.converged);
  CHECK(lc.ledger.mode == CycleMode::Engine);
  CHECK(std::abs(lc.ledger.eta - 0.25) < 1e-10);
  for (const auto& r : lc.strokes) CHECK(first_law_residual(r.ledger) < 1e-12);
  // isochores produce entropy, frictionless ramps none
  for (const auto& r : lc.strokes) {
    if (r.ledger.kind == StrokeKind::Isochore)
      CHECK(r.ledger.Sigma > 0.0);
    else
      CHECK(std::abs(r.ledger.Sigma) < 1e-12);
  }
}

TEST_CASE("fixed-point duality for affine cycles") {
  for (CycleKind k : {CycleKind::LocalOtto, CycleKind::SuddenOtto}) {
    CycleParams p = figure_params(k);
    if (k == CycleKind::SuddenOtto) p.Phi = kPi / 4;
    auto spec = build_cycle(p);
    Affine3 map = cycle_affine_map(spec);
    Vec3 direct = affine_fixed_point(map);

    // iterate the same map from a cold start until it settles
    Vec3 v{-1.0, 0.3, -0.2};
    for (int i = 0; i < 40000; ++i) v = map(v);
    const double Om0 = spec.strokes.front().p_start.Omega;
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d += (v[i] - direct[i]) * (v[i] - direct[i]);
    CHECK(std::sqrt(d) / Om0 < 1e-9);

    // run_cycle lands on the same corner
    auto lc = run_cycle(spec);
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i)
      d2 += (lc.corner.c[i] - direct[i]) * (lc.corner.c[i] - direct[i]);
    CHECK(std::sqrt(d2) / Om0 < 1e-9);
  }
}

TEST_CASE("first law on every stroke of every family") {
  for (CycleKind k :
       {CycleKind::ElementaryCarnot, CycleKind::ElementaryOtto, CycleKind::LocalOtto,
        CycleKind::LocalCarnot, CycleKind::GlobalCarnot, CycleKind::GlobalOtto,
        CycleKind::SuddenOtto}) {
    CAPTURE(cycle_kind_name(k));
    auto lc = run_cycle(build_cycle(figure_params(k)));
    CHECK(lc.converged);
    for (const auto& r : lc.strokes) CHECK(first_law_residual(r.ledger) < 1e-6);
    // cycle totals close as well: sum dE vanishes on the limit cycle
    double dE = 0.0;
    for (const auto& r : lc.strokes) dE += r.ledger.dE;
    const double Om0 = lc.corner.scale;
    CHECK(std::abs(dE) / Om0 < 1e-6);
  }
}

TEST_CASE("quasi-static work limits") {
  {
    CycleParams p = figure_params(CycleKind::ElementaryOtto);
    p.tau_cyc = 400.0;
    auto spec = build_cycle(p);
    auto lc = run_cycle(spec);
    CHECK(ideal_cycle_work(spec) == doctest::Approx(-0.15710061).epsilon(1e-5));
    CHECK(lc.ledger.W == doctest::Approx(ideal_cycle_work(spec)).epsilon(1e-4));
    CHECK(std::abs(lc.ledger.eta - 0.25) < 1e-9);
  }
  {
    auto spec = build_cycle(figure_params(CycleKind::GlobalOtto));
    CHECK(ideal_cycle_work(spec) == doctest::Approx(-0.18769793).epsilon(1e-5));
  }
  {
    // long elementary carnot approaches the reversible efficiency from below
    CycleParams p = figure_params(CycleKind::ElementaryCarnot);
    p.tau_cyc = 400.0;
    auto lc = run_cycle(build_cycle(p));
    CHECK(lc.ledger.mode == CycleMode::Engine);
    CHECK(lc.ledger.eta > 0.45);
    CHECK(lc.ledger.eta < 0.5);
  }
}

TEST_CASE("sudden cycle closed forms") {
  CycleParams p;
  p.kind = CycleKind::SuddenOtto;
  p.Phi = 0.0;
  auto lc = run_cycle(build_cycle(p));
  CHECK(std::abs(lc.ledger.eta - 0.25) < 1e-9);  // 1 - Omega_c/Omega_h

  auto [eta0, P0] = sudden_otto_closed_forms(0.0, 8.0, 6.0, 10.0, 5.0, 0.4);
  CHECK(eta0 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(P0 > 0.0);  // engine convention: positive extracted power
}

TEST_CASE("cycle-time sweep rows") {
  CycleParams p = figure_params(CycleKind::LocalOtto);
  std::vector<double> taus{20.0, 30.0, 45.0, 60.0};
  auto rows = sweep_cycle_time(p, taus, 2);
  REQUIRE(rows.size() == taus.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].tau_cyc == taus[i]);
    CHECK(rows[i].converged);
    CHECK(rows[i].error.empty());
    CHECK(rows[i].eta_over_etaC == doctest::Approx(rows[i].eta / 0.5).epsilon(1e-12));
    CHECK(rows[i].mode == CycleMode::Engine);
    // dissipated power is the positive shortfall against the ideal cycle
    CHECK(rows[i].P_diss > 0.0);
  }
  // a cycle time below the frictionless-ramp budget is reported, not thrown
  auto bad = sweep_cycle_time(p, {0.5}, 1);
  CHECK_FALSE(bad[0].error.empty());
}
