// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace qsprep {

using cplx = std::complex<double>;

// Row-major 2x2 matrix: {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;
// Single-qubit ket {<0|psi>, <1|psi>}.
using Vec2 = std::array<cplx, 2>;

// Qubit 0 is the most significant bit of the basis index.
struct Qubit {
  unsigned index = 0;
  friend constexpr bool operator==(Qubit, Qubit) = default;
};

namespace gates {

Mat2 identity();
Mat2 x();
Mat2 h();
Mat2 s();
Mat2 t();
Mat2 rz(double theta);
Mat2 ry(double theta);
// diag(1, e^{i phi})
Mat2 phase(double phi);

Mat2 multiply(const Mat2& a, const Mat2& b);
Mat2 adjoint(const Mat2& a);
cplx determinant(const Mat2& a);
bool is_unitary(const Mat2& u, double tol = 1e-10);
// Principal square root of a 2x2 unitary (V*V = U).
Mat2 sqrt_unitary(const Mat2& u);
double max_abs_diff(const Mat2& a, const Mat2& b);

}  // namespace gates

namespace kets {

Vec2 zero();
Vec2 one();
Vec2 plus();
Vec2 minus();

}  // namespace kets

}  // namespace qsprep
