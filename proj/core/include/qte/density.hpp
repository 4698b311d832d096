#pragma once

// 2x2 density-matrix helpers. The library itself works on expectation-value
// vectors; this representation backs the entropy-production evaluation and the
// test oracles, where matrix logarithms are needed.

#include <array>
#include <cmath>
#include <complex>

#include "qte/bloch.hpp"

namespace qte {

using cplx = std::complex<double>;

// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<cplx, 4> a{};

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(2 * i + j)]; }
  cplx operator()(int i, int j) const { return a[static_cast<size_t>(2 * i + j)]; }

  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (size_t i = 0; i < 4; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (size_t i = 0; i < 4; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
  }
  friend Mat2 operator*(cplx s, const Mat2& x) {
    Mat2 r;
    for (size_t i = 0; i < 4; ++i) r.a[i] = s * x.a[i];
    return r;
  }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    r(0, 0) = x(0, 0) * y(0, 0) + x(0, 1) * y(1, 0);
    r(0, 1) = x(0, 0) * y(0, 1) + x(0, 1) * y(1, 1);
    r(1, 0) = x(1, 0) * y(0, 0) + x(1, 1) * y(1, 0);
    r(1, 1) = x(1, 0) * y(0, 1) + x(1, 1) * y(1, 1);
    return r;
  }
};

inline cplx trace(const Mat2& m) { return m(0, 0) + m(1, 1); }

inline Mat2 dagger(const Mat2& m) {
  Mat2 r;
  r(0, 0) = std::conj(m(0, 0));
  r(0, 1) = std::conj(m(1, 0));
  r(1, 0) = std::conj(m(0, 1));
  r(1, 1) = std::conj(m(1, 1));
  return r;
}

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

// Spin operators, hbar = 1: S_j = sigma_j / 2.
Mat2 spin_x();
Mat2 spin_y();
Mat2 spin_z();
Mat2 identity2();

// rho = I/2 + 2 (<Sx> Sx + <Sy> Sy + <Sz> Sz); input must be the static frame.
Mat2 density_from_static(const std::array<double, 3>& s);

// Static-frame expectations (<Sx>, <Sy>, <Sz>) of a density matrix.
std::array<double, 3> static_from_density(const Mat2& rho);

// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Mat2& m);

// log(rho) of a positive Hermitian matrix; eigenvalues floored at `floor`.
Mat2 hermitian_log(const Mat2& rho, double floor = 1e-14);

}  // namespace qte
