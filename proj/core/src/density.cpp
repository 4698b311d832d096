#include "qte/density.hpp"

namespace qte {

Mat2 spin_x() {
  Mat2 m;
  m(0, 1) = 0.5;
  m(1, 0) = 0.5;
  return m;
}

Mat2 spin_y() {
  Mat2 m;
  m(0, 1) = cplx(0.0, -0.5);
  m(1, 0) = cplx(0.0, 0.5);
  return m;
}

Mat2 spin_z() {
  Mat2 m;
  m(0, 0) = 0.5;
  m(1, 1) = -0.5;
  return m;
}

Mat2 identity2() {
  Mat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  return m;
}

Mat2 density_from_static(const std::array<double, 3>& s) {
  Mat2 rho = 0.5 * identity2();
  rho = rho + 2.0 * s[0] * spin_x() + 2.0 * s[1] * spin_y() + 2.0 * s[2] * spin_z();
  return rho;
}

std::array<double, 3> static_from_density(const Mat2& rho) {
  auto ev = [&](const Mat2& op) { return trace(op * rho).real(); };
  return {ev(spin_x()), ev(spin_y()), ev(spin_z())};
}

std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b2 = std::norm(m(0, 1));
  const double tr = a + d;
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b2);
  return {0.5 * tr - disc, 0.5 * tr + disc};
}

Mat2 hermitian_log(const Mat2& rho, double floor) {
  const auto ev = hermitian_eigenvalues(rho);
  const double l0 = std::max(ev[0], floor);
  const double l1 = std::max(ev[1], floor);

  // Projector decomposition: rho = l0 P0 + l1 P1, P1 = (rho - l0 I)/(l1 - l0).
  if (l1 - l0 < 1e-14) {
    Mat2 r = std::log(l0) * identity2();
    return r;
  }
  const Mat2 p1 = (1.0 / (ev[1] - ev[0])) * (rho - ev[0] * identity2());
  const Mat2 p0 = identity2() - p1;
  return std::log(l0) * p0 + std::log(l1) * p1;
}

}  // namespace qte
