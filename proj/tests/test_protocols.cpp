#include <cmath>

#include "doctest.h"
#include "qte/open.hpp"
#include "qte/protocols.hpp"

using namespace qte;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("phi profiles") {
  PhiProfile p = phi_smoothstep(1.2, 2.0);
  CHECK(p.phi(0.0) == 0.0);
  CHECK(p.phi(2.0) == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(p.phidot(0.0) == 0.0);
  CHECK(p.phidot(2.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.stationary_endpoints);
  // peak rate 3 Phi / (2 tau) at midpoint
  CHECK(p.phidot(1.0) == doctest::Approx(3.0 * 1.2 / 4.0).epsilon(1e-14));

  PhiProfile q = phi_quadratic_legacy(0.7, 2.0);
  CHECK_FALSE(q.stationary_endpoints);
  CHECK(q.phidot(0.0) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("constant-mu ramp") {
  const double tau = 1.5, Phi = 0.9;
  Schedule s = const_mu_schedule(8.0, 6.0, 0.0, Phi, tau);
  const double mu_expect = -2.0 * Phi / (tau * 14.0);
  for (std::size_t i = 0; i < s.size(); i += 50)
    CHECK(s.mu[i] == doctest::Approx(mu_expect).epsilon(1e-9));
  CHECK(s.Omega.front() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(s.Omega.back() == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(s.phi.front() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.phi.back() == doctest::Approx(Phi).epsilon(1e-9));
  CHECK_THROWS_AS(const_mu_schedule(-8.0, 6.0, 0.0, Phi, tau), schedule_error);
}

TEST_CASE("shortcut-to-equilibrium target") {
  STERequest req;
  req.Omega_i = 12.0;
  req.Omega_f = 8.0;
  req.tau = 10.0;
  req.bath = BathSpec{10.0, 0.01, 1.0};
  SteTarget tg = ste_target(req);
  CHECK(tg.c0 == doctest::Approx(chi_attractor(12.0, 10.0)).epsilon(1e-14));
  CHECK(tg.chi(0.0) == doctest::Approx(tg.c0).epsilon(1e-14));
  CHECK(tg.chi(1.0) == doctest::Approx(chi_attractor(8.0, 10.0)).epsilon(1e-12));
  // cubic has zero slope at both ends
  CHECK(tg.chi_dot(0.0, req.tau) == 0.0);
  CHECK(tg.chi_dot(1.0, req.tau) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("synthesized schedule hits the endpoints and closes") {
  STERequest req;
  req.Omega_i = 12.0;
  req.Omega_f = 8.0;
  req.tau = 20.0 * 2.0 * kPi / 8.0;
  req.bath = BathSpec{10.0, 0.01, 1.0};
  req.Phi = kPi / 2;
  Schedule s = synthesize_ste(req);
  CHECK(s.Omega.front() == doctest::Approx(12.0).epsilon(1e-6));
  CHECK(s.Omega.back() == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(s.kind == StrokeKind::Open);

  // the adiabatic master equation follows the designed population track
  std::array<double, 3> g0{chi_attractor(12.0, req.bath.T), 0.0, 0.0};
  auto traj = evolve_name(g0, s, req.bath);
  CHECK(traj.inertial_ok);
  const auto& gf = traj.g.back();
  CHECK(std::abs(gf[0] - chi_attractor(8.0, req.bath.T)) < 1e-8);
  for (const auto& g : traj.g) {
    CHECK(std::abs(g[1]) < 1e-10);
    CHECK(std::abs(g[2]) < 1e-10);
  }
}

TEST_CASE("infeasible duration is rejected") {
  STERequest req;
  req.Omega_i = 12.0;
  req.Omega_f = 8.0;
  req.tau = 0.05;  // far too fast for this bath coupling
  req.bath = BathSpec{10.0, 0.01, 1.0};
  CHECK_THROWS_AS(synthesize_ste(req), protocol_infeasible);
}

TEST_CASE("non-Ohmic synthesis is rejected") {
  STERequest req;
  req.Omega_i = 12.0;
  req.Omega_f = 8.0;
  req.tau = 10.0;
  req.bath = BathSpec{10.0, 0.01, 2.0};
  CHECK_THROWS_AS(synthesize_ste(req), schedule_error);
}
