#include <cmath>
#include <random>

#include "doctest.h"
#include "qte/bloch.hpp"

using namespace qte;

TEST_CASE("thermal state") {
  CHECK(thermal_polarization(10.0, 10.0) == doctest::Approx(-0.23105857863000487).epsilon(1e-14));
  BlochState s = thermal_state(10.0, 10.0);
  CHECK(s.frame == Frame::Dynamical);
  CHECK(s.c[0] == doctest::Approx(10.0 * -0.23105857863000487).epsilon(1e-14));
  CHECK(s.c[1] == 0.0);
  CHECK(s.c[2] == 0.0);
  // infinite temperature limit: fully mixed
  CHECK(std::abs(thermal_polarization(1.0, 1e9)) < 1e-9);
  CHECK_THROWS_AS(thermal_state(-1.0, 1.0), state_error);
}

TEST_CASE("frame params") {
  FrameParams p = FrameParams::from_fields(3.0, 4.0, 0.75);
  CHECK(p.Omega == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(p.phi == doctest::Approx(std::atan2(4.0, 3.0)).epsilon(1e-15));
  CHECK(p.kappa == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(p.alpha == doctest::Approx(6.25).epsilon(1e-15));
  FrameParams q = FrameParams::from_polar(p.Omega, p.phi, p.mu);
  CHECK(q.omega == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(q.epsilon == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("frame rotations round-trip and preserve entropy") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double Om = 1.0 + 9.0 * std::abs(u(rng));
    FrameParams p = FrameParams::from_polar(Om, 1.5 * u(rng), 2.0 * u(rng));
    // random state inside the Bloch ball, static frame
    double v[3] = {u(rng), u(rng), u(rng)};
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    const double r = 0.49 * std::abs(u(rng));
    BlochState s;
    s.frame = Frame::Static;
    for (int j = 0; j < 3; ++j) s.c[j] = v[j] / norm * r;

    const double S0 = vn_entropy(s);
    BlochState d = frame_rotate(s, Frame::Dynamical, p);
    BlochState e = frame_rotate(d, Frame::Eigen, p);
    BlochState back = frame_rotate(e, Frame::Static, p);
    for (int j = 0; j < 3; ++j) CHECK(back.c[j] == doctest::Approx(s.c[j]).epsilon(1e-12));
    CHECK(vn_entropy(d) == doctest::Approx(S0).epsilon(1e-12));
    CHECK(vn_entropy(e) == doctest::Approx(S0).epsilon(1e-12));
    CHECK(polarization(e) == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("entropies") {
  BlochState mixed;
  mixed.frame = Frame::Static;
  CHECK(vn_entropy(mixed) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  // thermal state: vn entropy equals energy entropy, divergence zero
  BlochState th = thermal_state(8.0, 10.0);
  FrameParams p = FrameParams::from_polar(8.0, 0.0);
  CHECK(energy_entropy(th, p) == doctest::Approx(vn_entropy(th)).epsilon(1e-12));
  CHECK(divergence(th, p) == doctest::Approx(0.0).epsilon(1e-12));

  // coherent state: energy entropy exceeds vn entropy by the divergence
  BlochState coh = th;
  coh.c[1] = 0.8;
  CHECK(divergence(coh, p) > 0.0);
  CHECK(energy_entropy(coh, p) ==
        doctest::Approx(vn_entropy(coh) + divergence(coh, p)).epsilon(1e-12));
}

TEST_CASE("coherence measure and casimir companion") {
  FrameParams p = FrameParams::from_polar(5.0, 0.3);
  BlochState s;
  s.frame = Frame::Dynamical;
  s.scale = 5.0;
  s.c = {-2.0, 1.5, -1.0};
  CHECK(coherence_measure(s, p) ==
        doctest::Approx(std::sqrt(1.5 * 1.5 + 1.0) / 5.0).epsilon(1e-14));
  CHECK(casimir_companion(s, p) ==
        doctest::Approx((4.0 + 2.25 + 1.0) / 25.0).epsilon(1e-14));
  BlochState th = thermal_state(5.0, 10.0);
  CHECK(coherence_measure(th, p) == 0.0);
}

TEST_CASE("generalized Gibbs multipliers") {
  CHECK(gibbs_f(0.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(gibbs_s(0.0) == doctest::Approx(-2.0).epsilon(1e-14));
  // small-argument continuity
  CHECK(gibbs_f(1e-8) == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(gibbs_s(1e-8) == doctest::Approx(-2.0).epsilon(1e-7));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    double g[3] = {u(rng), u(rng), u(rng)};
    const double norm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    const double k = 0.69 * std::abs(u(rng));  // < 1/sqrt(2)
    for (double& x : g) x = x / norm * k;
    GibbsParams gp = gibbs_from_expectations(g[0], g[1], g[2]);
    auto back = expectations_from_gibbs(gp);
    for (int j = 0; j < 3; ++j) CHECK(back[j] == doctest::Approx(g[j]).epsilon(1e-10));
  }
  // pure thermal direction: gamma components vanish
  GibbsParams gp = gibbs_from_expectations(-0.3, 0.0, 0.0);
  CHECK(gp.gamma_x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gp.gamma_y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS(gibbs_from_expectations(0.71, 0.0, 0.0));
}
