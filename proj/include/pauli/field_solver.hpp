#pragma once

// Elliptic solves for the electric potential V and the magnetic potential A.
//
// On the torus the zero Fourier mode of every source is discarded (uniform
// neutralizing background), so V and A always have zero mean.

#include <optional>
#include <string>

#include "pauli/fields.hpp"
#include "pauli/magnetic.hpp"

namespace pauli {

enum class Gauge {
  /// Coulomb gauge, -Lap A = P J with P the Leray projector.
  darwin,
  /// Lorenz gauge, -Lap A = J.
  poisswell,
};

std::string to_string(Gauge g);
Gauge parse_gauge(const std::string& s);

struct ASolveOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
  /// Relaxation factor in (0, 1].
  double damping = 1.0;
  /// Start from the supplied previous A instead of zero.
  bool warm_start = true;
  CurrentForm current_form = CurrentForm::pauli;

  /// Throws std::invalid_argument when an option is out of range.
  void validate() const;
};

struct ASolveResult {
  VectorField A;
  int iterations = 0;
  /// ||-Lap A - P0 G (f - |u|^2 A)|| / max(||f||, 1e-30) for the returned A.
  double residual = 0.0;
};

/// V = (-Lap)^{-1}(|u|^2 - mean |u|^2).
ScalarField solve_V(const SpinorField& u);

/// Fixed-point iteration A <- (1 - d) A + d (-Lap)^{-1} P0 G (f - |u|^2 A),
/// G = Leray projector (darwin) or identity (poisswell). Throws NonConvergence
/// when the residual grows or the iteration budget runs out.
ASolveResult solve_A(const SpinorField& u, Gauge gauge, const ASolveOptions& opts,
                     const VectorField* initial_guess = nullptr);

/// Relative residual of the A equation recomputed in physical space from
/// current_density, laplacian and leray_project.
double a_equation_residual(const SpinorField& u, const VectorField& A, Gauge gauge,
                           CurrentForm form = CurrentForm::pauli);

/// darwin: ||div A||; poisswell: ||div A + dV/dt|| with dV/dt = (-Lap)^{-1}(-div J).
double gauge_residual(const SpinorField& u, const VectorField& A, Gauge gauge,
                      CurrentForm form = CurrentForm::pauli);

struct EllipticReport {
  /// ||grad A|| / ||u||_{H^1}
  double grad_A_ratio = 0.0;
  /// ||V||_{H^1} / ||u||_{H^1}^2
  double V_ratio = 0.0;
};

EllipticReport elliptic_estimate_report(const SpinorField& u, const VectorField& A, const ScalarField& V);

}  // namespace pauli
