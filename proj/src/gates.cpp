// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsprep/types.hpp"

namespace qsprep {

namespace gates {

Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 x() { return {0.0, 1.0, 1.0, 0.0}; }

Mat2 h() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {r, r, r, -r};
}

Mat2 s() { return {1.0, 0.0, 0.0, cplx(0.0, 1.0)}; }
Mat2 t() { return phase(std::numbers::pi / 4); }

Mat2 rz(double theta) {
  return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

Mat2 ry(double theta) {
  const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
  return {c, -sn, sn, c};
}

Mat2 phase(double phi) { return {1.0, 0.0, 0.0, std::polar(1.0, phi)}; }

Mat2 multiply(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

cplx determinant(const Mat2& a) { return a[0] * a[3] - a[1] * a[2]; }

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double d = 0.0;
  for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

bool is_unitary(const Mat2& u, double tol) {
  for (const cplx& e : u)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return max_abs_diff(multiply(adjoint(u), u), identity()) <= tol;
}

// For 2x2 M with s = sqrt(det M), (M + sI)/sqrt(tr M + 2s) squares to M.
// Both signs of s are tried; the one with the larger denominator is stable.
Mat2 sqrt_unitary(const Mat2& u) {
  const cplx det = determinant(u);
  const cplx tr = u[0] + u[3];
  cplx s = std::sqrt(det);
  cplx t2 = tr + 2.0 * s;
  if (std::abs(tr - 2.0 * s) > std::abs(t2)) {
    s = -s;
    t2 = tr + 2.0 * s;
  }
  const cplx t = std::sqrt(t2);
  return {(u[0] + s) / t, u[1] / t, u[2] / t, (u[3] + s) / t};
}

}  // namespace gates

namespace kets {

Vec2 zero() { return {1.0, 0.0}; }
Vec2 one() { return {0.0, 1.0}; }

Vec2 plus() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {r, r};
}

Vec2 minus() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {r, -r};
}

}  // namespace kets

}  // namespace qsprep
