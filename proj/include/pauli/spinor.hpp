#pragma once

// Pauli matrices and the pointwise algebra of 2-spinor fields.

#include <array>

#include "pauli/fields.hpp"

namespace pauli {

using Mat2 = std::array<std::array<cplx, 2>, 2>;

/// sigma_1, sigma_2, sigma_3 for index 1, 2, 3.
const Mat2& pauli_matrix(int index);

Mat2 matmul(const Mat2& a, const Mat2& b);

/// sum_k v_k sigma_k for a constant (possibly complex) 3-vector.
Mat2 sigma_dot_matrix(const std::array<cplx, 3>& v);

/// Pointwise (sum_k v_k sigma_k) u.
SpinorField sigma_dot(const VectorField& v, const SpinorField& u);
SpinorField sigma_dot(const std::array<cplx, 3>& v, const SpinorField& u);
SpinorField sigma_dot(const std::array<double, 3>& v, const SpinorField& u);

/// sigma_k u for k in {1, 2, 3}.
SpinorField apply_sigma(int index, const SpinorField& u);

/// L^2 pairing (v, w) = int conj(v1) w1 + conj(v2) w2 dx, antilinear in v.
cplx inner_product(const SpinorField& v, const SpinorField& w);
double norm_squared(const SpinorField& u);

/// |u1|^2 + |u2|^2.
ScalarField charge_density(const SpinorField& u);

/// <u, sigma_k u>, k = 1..3, as a real vector field.
VectorField spin_density(const SpinorField& u);

}  // namespace pauli
