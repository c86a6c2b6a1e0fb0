#pragma once

// Minimal-coupling operators grad_A = grad - iA and the Pauli current.
// No dealiasing happens here; callers decide the truncation policy.

#include <array>

#include "pauli/fields.hpp"

namespace pauli {

using SpinorTriple = std::array<SpinorField, 3>;

/// Spectral gradient of each spin component: entry k holds d_k u.
SpinorTriple spinor_gradient(const SpinorField& u);

/// Entry k holds d_k u - i A_k u.
SpinorTriple magnetic_gradient(const SpinorField& u, const VectorField& A);

/// sum_k (d_k - i A_k)^2 u, composed from two magnetic gradients.
SpinorField magnetic_laplacian(const SpinorField& u, const VectorField& A);

/// The same operator through the expansion
/// Lap u - 2i A.grad u - i (div A) u - |A|^2 u.
SpinorField magnetic_laplacian_expanded(const SpinorField& u, const VectorField& A);

/// (sigma . grad) u, evaluated as a 2x2 Fourier multiplier.
SpinorField sigma_gradient(const SpinorField& u);

/// (sigma . grad_A) u = (sigma . grad) u - i (sigma . A) u.
SpinorField pauli_operator(const SpinorField& u, const VectorField& A);

enum class SpinLaplacianMode { direct, decomposed };

/// (sigma . grad_A)^2 u. Direct mode applies pauli_operator twice; decomposed
/// mode evaluates magnetic_laplacian_expanded(u, A) + (sigma . curl A) u.
SpinorField spin_magnetic_laplacian(const SpinorField& u, const VectorField& A,
                                    SpinLaplacianMode mode = SpinLaplacianMode::direct);

enum class CurrentForm {
  /// Im<u, grad_A u> + (1/2) curl <u, sigma u>
  pauli,
  /// Im<sigma_k u, (sigma . grad_A) u>
  sigma,
};

VectorField current_density(const SpinorField& u, const VectorField& A, CurrentForm form = CurrentForm::pauli);

/// Current evaluated at A = 0. Since J(u, A) = J(u, 0) - |u|^2 A pointwise,
/// this is the A-independent source of the magnetic potential equation.
VectorField current_source(const SpinorField& u, CurrentForm form = CurrentForm::pauli);

}  // namespace pauli
