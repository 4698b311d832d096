#pragma once

// Tiny fixed-size real linear algebra for stroke propagators and cycle maps.

#include <array>
#include <cmath>
#include <stdexcept>

namespace qte {

using Vec3 = std::array<double, 3>;

struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(int i, int j) { return a[static_cast<size_t>(3 * i + j)]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(3 * i + j)]; }

  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }

  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
        r(i, j) = s;
      }
    return r;
  }
  friend Vec3 operator*(const Mat3& m, const Vec3& v) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) r[static_cast<size_t>(i)] += m(i, k) * v[static_cast<size_t>(k)];
    return r;
  }
  friend Mat3 operator*(double s, const Mat3& x) {
    Mat3 r;
    for (size_t i = 0; i < 9; ++i) r.a[i] = s * x.a[i];
    return r;
  }
  friend Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (size_t i = 0; i < 9; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
  }
};

struct linalg_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solve A x = b by Gaussian elimination with partial pivoting.
inline Vec3 solve3(Mat3 m, Vec3 b) {
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m(perm[r], col)) > std::abs(m(perm[piv], col))) piv = r;
    std::swap(perm[col], perm[piv]);
    const double d = m(perm[col], col);
    if (std::abs(d) < 1e-300) throw linalg_error("solve3: singular matrix");
    for (int r = col + 1; r < 3; ++r) {
      const double f = m(perm[r], col) / d;
      for (int c = col; c < 3; ++c) m(perm[r], c) -= f * m(perm[col], c);
      b[static_cast<size_t>(perm[r])] -= f * b[static_cast<size_t>(perm[col])];
    }
  }
  Vec3 x{};
  for (int i = 2; i >= 0; --i) {
    double s = b[static_cast<size_t>(perm[i])];
    for (int c = i + 1; c < 3; ++c) s -= m(perm[i], c) * x[static_cast<size_t>(c)];
    x[static_cast<size_t>(i)] = s / m(perm[i], i);
  }
  return x;
}

// Affine map v -> M v + b on (H, L, C) expectation vectors.
struct Affine3 {
  Mat3 M = Mat3::identity();
  Vec3 b{};

  Vec3 operator()(const Vec3& v) const {
    Vec3 r = M * v;
    for (size_t i = 0; i < 3; ++i) r[i] += b[i];
    return r;
  }
  // Composition: (x after y)(v) = x(y(v)).
  friend Affine3 compose(const Affine3& x, const Affine3& y) {
    Affine3 r;
    r.M = x.M * y.M;
    r.b = x.M * y.b;
    for (size_t i = 0; i < 3; ++i) r.b[i] += x.b[i];
    return r;
  }
};

// Fixed point of v = M v + b via direct solve of (I - M) v = b.
inline Vec3 affine_fixed_point(const Affine3& map) {
  return solve3(Mat3::identity() - map.M, map.b);
}

}  // namespace qte
