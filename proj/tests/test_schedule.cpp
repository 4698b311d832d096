#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qte/protocols.hpp"
#include "qte/schedule.hpp"

using namespace qte;

TEST_CASE("constant schedule grid") {
  Schedule s = constant_schedule(StrokeKind::Isochore, 1.0, 0.3, 5.0, 0.2);
  CHECK(s.t.front() == 0.0);
  CHECK(s.t.back() == doctest::Approx(1.0).epsilon(1e-15));  // clamped last point
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s.Omega[i] == 5.0);
    CHECK(s.phi[i] == 0.2);
    CHECK(s.phidot[i] == 0.0);
    CHECK(s.alpha[i] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(s.mu[i] == doctest::Approx(0.0).epsilon(1e-14));
  }
  CHECK(s.tau() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("derived columns are consistent") {
  Schedule s = const_mu_schedule(8.0, 6.0, 0.0, 1.2, 2.0, 1e-3);
  for (std::size_t i = 0; i < s.size(); i += 97) {
    CHECK(s.omega[i] == doctest::Approx(s.Omega[i] * std::cos(s.phi[i])).epsilon(1e-12));
    CHECK(s.epsilon[i] == doctest::Approx(s.Omega[i] * std::sin(s.phi[i])).epsilon(1e-12));
    CHECK(s.alpha[i] ==
          doctest::Approx(std::hypot(s.Omega[i], s.phidot[i])).epsilon(1e-12));
    CHECK(s.kappa[i] ==
          doctest::Approx(std::sqrt(1.0 + s.mu[i] * s.mu[i])).epsilon(1e-12));
  }
  // mu constant along the ramp
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(s.mu[i] == doctest::Approx(s.mu[0]).epsilon(1e-9));
}

TEST_CASE("interpolants") {
  Schedule s = const_mu_schedule(8.0, 6.0, 0.0, 0.5, 2.0, 1e-3);
  CHECK(s.Omega_at(0.0) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(s.Omega_at(2.0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(s.Omega_at(1.0) == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(s.Omega_dot_at(0.7) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(s.upsilon_at(0.5) == 0.0);  // empty column means zero drive
  CHECK_FALSE(s.has_upsilon());
}

TEST_CASE("export import round trip is byte identical") {
  Schedule s = const_mu_schedule(8.0, 6.0, 0.0, 1.5707963267948966, 0.9, 1e-2);
  std::ostringstream a;
  schedule_export(s, a);
  // header is fixed
  CHECK(a.str().substr(0, 34) == "t,omega,epsilon,Omega,phi,mu,alpha");

  std::istringstream in(a.str());
  Schedule r = schedule_import(in, StrokeKind::Unitary);
  std::ostringstream b;
  schedule_export(r, b);
  CHECK(a.str() == b.str());
  CHECK(r.size() == s.size());
}

TEST_CASE("fixed numeric formatting") {
  CHECK(format_sig12(0.0) == "0");
  CHECK(format_sig12(1.5) == "1.5");
  CHECK(format_sig12(-2.0) == "-2");
  // 12 significant digits
  CHECK(format_sig12(3.14159265358979) == "3.14159265359");
  // parses back to the same double at this precision
  CHECK(std::stod(format_sig12(1.0 / 3.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(constant_schedule(StrokeKind::Unitary, -1.0, 0.1, 5.0), schedule_error);
  CHECK_THROWS_AS(constant_schedule(StrokeKind::Unitary, 1.0, 0.1, -5.0), schedule_error);
}
