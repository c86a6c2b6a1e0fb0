#pragma once

#include "pauli/field_solver.hpp"
#include "pauli/fields.hpp"

namespace pauli {

/// How the spinor talks to its own potentials. The free mode switches both
/// potentials off and is used to test the integrators on the linear flow.
enum class Coupling { full, free };

struct Model {
  Gauge gauge = Gauge::darwin;
  double epsilon = 0.0;
  Coupling coupling = Coupling::full;
  ASolveOptions solver{};
};

/// A spinor together with the potentials solved from it.
struct SimState {
  double t = 0.0;
  SpinorField u;
  VectorField A;
  ScalarField V;
  Model model;
  /// ||u(0)||^2, frozen when the state is first built.
  double Q0 = 0.0;
  int solver_iterations = 0;
  double solver_residual = 0.0;
};

struct Potentials {
  VectorField A;
  ScalarField V;
  int iterations = 0;
  double residual = 0.0;
};

/// Solves V and A for u under the model; `warm` seeds the A iteration.
Potentials solve_potentials(const SpinorField& u, const Model& model, const VectorField* warm = nullptr);

/// Builds a self-consistent state at time t with Q0 = ||u||^2.
SimState make_state(SpinorField u, const Model& model, double t = 0.0);

/// H u = -1/2 (sigma . grad_A)^2 u + V u.
SpinorField apply_H(const SpinorField& u, const VectorField& A, const ScalarField& V);

/// Re (u, H u) from the direct pairing.
double expectation_H(const SimState& s);
/// 1/2 ||(sigma . grad_A) u||^2 + ||grad V||^2, which equals (u, H u) for a
/// self-consistent V.
double expectation_H_identity(const SimState& s);

double charge(const SimState& s);

struct EnergyTerms {
  double pauli = 0.0;     ///< ||(sigma . grad_A) u||^2
  double magnetic = 0.0;  ///< ||grad A||^2
  double electric = 0.0;  ///< ||grad V||^2
  double total() const { return pauli + magnetic + electric; }
};

EnergyTerms energy_terms(const SimState& s);
double energy(const SimState& s);

/// -(i + eps) H u + eps (u, H u) / Q0 u, with the potentials of `s`.
SpinorField regularized_rhs(const SimState& s);
/// Same, from an already computed H u.
SpinorField regularized_rhs(const SpinorField& u, const SpinorField& Hu, double epsilon, double Q0);

}  // namespace pauli
