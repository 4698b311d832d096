#include <cmath>
#include <random>

#include "doctest.h"
#include "qte/bloch.hpp"
#include "qte/formulas.hpp"
#include "qte/open.hpp"
#include "qte/thermo.hpp"

using namespace qte;

TEST_CASE("mode classification") {
  CHECK(classify_mode(-1.0, 2.0, -1.0) == CycleMode::Engine);
  CHECK(classify_mode(1.0, -0.5, 0.2) == CycleMode::Refrigerator);
  CHECK(classify_mode(1.0, 0.5, -1.5) == CycleMode::Accelerator);
  CHECK(classify_mode(1.0, -0.5, -0.5) == CycleMode::Dissipator);
  CHECK(cycle_mode_name(CycleMode::Engine) == "engine");
}

TEST_CASE("cycle ledger accounting") {
  StrokeLedger a;
  a.kind = StrokeKind::Isochore;
  a.bath = BathTag::Hot;
  a.Q = 2.0;
  StrokeLedger b;
  b.kind = StrokeKind::Unitary;
  b.W = -1.2;
  StrokeLedger c;
  c.kind = StrokeKind::Isochore;
  c.bath = BathTag::Cold;
  c.Q = -0.8;
  CycleLedger led = cycle_ledger({a, b, c}, 10.0, 10.0, 5.0);
  CHECK(led.W == doctest::Approx(-1.2).epsilon(1e-14));
  CHECK(led.Q_h == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(led.Q_c == doctest::Approx(-0.8).epsilon(1e-14));
  CHECK(led.eta == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(led.power == doctest::Approx(0.12).epsilon(1e-14));
  CHECK(led.sigma_cyc == doctest::Approx(-2.0 / 10.0 + 0.8 / 5.0).epsilon(1e-14));
  CHECK(led.mode == CycleMode::Engine);
}

TEST_CASE("entropy production rate against the relaxation identity") {
  // coherence-free: sigma = -Gamma (alpha/sqrt2)(c - c*)(1/T' - 1/T)
  const double alpha = 5.0, T = 7.0;
  BathSpec b{T, 0.01, 1.0};
  auto r = name_rates(alpha, 1.0, b);
  const double G = r.Gamma();
  for (double Tp : {3.0, 5.0, 6.9, 8.0, 12.0}) {
    const double c = -std::tanh(0.5 * alpha / Tp) / std::sqrt(2.0);
    const double cs = chi_attractor(alpha, T);
    const double expect =
        -G * alpha / std::sqrt(2.0) * (c - cs) * (1.0 / Tp - 1.0 / T);
    const double got = entropy_production_rate({c, 0.0, 0.0}, alpha, G, T);
    CHECK(got == doctest::Approx(expect).epsilon(1e-10));

    // closed form in the Gibbs multiplier agrees
    const double beta = std::sqrt(2.0) * std::atanh(-std::sqrt(2.0) * c);
    CHECK(sigma_chi_closed(beta, alpha, r.down, T) ==
          doctest::Approx(got).epsilon(1e-8));
  }
  // attractor itself produces nothing
  CHECK(entropy_production_rate({chi_attractor(alpha, T), 0.0, 0.0}, alpha, G, T) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("symmetric dependence on the inverse-temperature gap") {
  const double alpha = 2.0, T = 10.0;
  BathSpec b{T, 0.01, 1.0};
  auto r = name_rates(alpha, 1.0, b);
  // matched |1/T' - 1/T| on both sides in the linear-response regime
  const double d = 1e-4;
  const double Tp1 = 1.0 / (1.0 / T + d), Tp2 = 1.0 / (1.0 / T - d);
  const double b1 = alpha / (std::sqrt(2.0) * Tp1);
  const double b2 = alpha / (std::sqrt(2.0) * Tp2);
  const double s1 = sigma_chi_closed(b1, alpha, r.down, T);
  const double s2 = sigma_chi_closed(b2, alpha, r.down, T);
  CHECK(s1 == doctest::Approx(s2).epsilon(1e-4));
  CHECK(s1 > 0.0);
}

TEST_CASE("high-temperature square law") {
  const double T = 100.0, alpha = 1.0;  // alpha/T = 0.01
  BathSpec b{T, 0.01, 1.0};
  auto r = name_rates(alpha, 1.0, b);
  for (double Tp : {90.0, 95.0, 110.0}) {
    const double beta = alpha / (std::sqrt(2.0) * Tp);
    const double full = sigma_chi_closed(beta, alpha, r.down, T);
    const double sq = sigma_chi_high_T(beta, alpha, r.down, T);
    CHECK(std::abs(sq / full - 1.0) < 0.01);
  }
}

TEST_CASE("flux-force decomposition") {
  const double alpha = 4.0, T = 8.0;
  BathSpec b{T, 0.012, 1.0};
  auto r = name_rates(alpha, 1.0, b);
  const double G = r.Gamma();

  // at the attractor everything vanishes
  auto ff0 = flux_force_breakdown({chi_attractor(alpha, T), 0.0, 0.0}, alpha, G, T);
  CHECK(std::abs(ff0.F_chi) < 1e-12);
  CHECK(std::abs(ff0.J_chi) < 1e-12);
  CHECK(std::abs(ff0.total()) < 1e-12);

  // the sum reproduces the total entropy production on random states
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    double g[3] = {u(rng), u(rng), u(rng)};
    const double norm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    const double k = 0.68 * std::abs(u(rng));
    for (double& x : g) x = x / norm * k;
    auto ff = flux_force_breakdown({g[0], g[1], g[2]}, alpha, G, T);
    const double tot = entropy_production_rate({g[0], g[1], g[2]}, alpha, G, T);
    CHECK(ff.total() == doctest::Approx(tot).epsilon(1e-8));
    // coherence channels are individually dissipative
    CHECK(ff.F_sx * ff.J_sx >= -1e-12);
    CHECK(ff.F_sy * ff.J_sy >= -1e-12);
    CHECK(tot >= -1e-10);
  }

  // coherence-free: only the population channel contributes
  const double c = -std::tanh(0.4) / std::sqrt(2.0);
  auto ffc = flux_force_breakdown({c, 0.0, 0.0}, alpha, G, T);
  CHECK(ffc.J_sx == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ffc.J_sy == doctest::Approx(0.0).epsilon(1e-14));
  const double beta = std::sqrt(2.0) * std::atanh(-std::sqrt(2.0) * c);
  CHECK(ffc.total() ==
        doctest::Approx(sigma_chi_closed(beta, alpha, r.down, T)).epsilon(1e-8));
}

TEST_CASE("linear response coefficient") {
  const double T = 1.0, alpha = 0.01;
  BathSpec b{T, 0.01, 1.0};
  const double G = name_rates(alpha, 1.0, b).Gamma();
  const double L = onsager_coefficient(alpha, G);
  CHECK(L == doctest::Approx(G * 0.25 * alpha * alpha).epsilon(1e-14));
  const double Tp = 1.01 * T;
  const double c = -std::tanh(0.5 * alpha / Tp) / std::sqrt(2.0);
  auto ff = flux_force_breakdown({c, 0.0, 0.0}, alpha, G, T);
  CHECK(std::abs(ff.J_chi / ff.F_chi / L - 1.0) < 0.01);

  // at alpha/T = 1 the ratio deviates visibly from L
  const double al2 = 1.0;
  const double G2 = name_rates(al2, 1.0, b).Gamma();
  const double Tp2 = 0.5 * T;
  const double c2 = -std::tanh(0.5 * al2 / Tp2) / std::sqrt(2.0);
  auto ff2 = flux_force_breakdown({c2, 0.0, 0.0}, al2, G2, T);
  CHECK(std::abs(ff2.J_chi / ff2.F_chi / onsager_coefficient(al2, G2) - 1.0) > 0.10);
}

TEST_CASE("availability") {
  CHECK(availability(2.0, 0.3, 5.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("formula registry") {
  CHECK(eta_carnot(10.0, 5.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(eta_ca(10.0, 5.0) == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-14));
  CHECK(eta_otto(6.0, 8.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(work_carnot_max(10.0, 5.0) == doctest::Approx(5.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(eta_otto_max_work(10.0, 5.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(thermalization_factor(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(power_otto_bb(0.4, 2.0, 0.1) == doctest::Approx(0.02).epsilon(1e-14));

  // the sinh condition solution really is a root
  for (double g : {0.01, 0.1, 1.0, 5.0}) {
    const double x = sinh_condition_solve(g);
    CHECK(std::abs(std::sinh(x) - x - g) < 1e-10);
  }
  // and approaches (6g)^(1/3) for small g
  CHECK(sinh_condition_solve(1e-4) ==
        doctest::Approx(std::cbrt(6e-4)).epsilon(1e-2));

  CHECK(eval_formula("eta_carnot", {{"T_h", 10.0}, {"T_c", 5.0}}) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(eval_formula("eta_carnot", {{"T_h", 10.0}}), formula_error);
  CHECK_THROWS_AS(eval_formula("nope", {}), formula_error);
}
