#include "pauli/hamiltonian.hpp"

#include <stdexcept>

#include "pauli/magnetic.hpp"
#include "pauli/spectral.hpp"
#include "pauli/spinor.hpp"

namespace pauli {

Potentials solve_potentials(const SpinorField& u, const Model& model, const VectorField* warm) {
  Potentials p;
  if (model.coupling == Coupling::free) {
    p.A = VectorField(u.grid);
    p.V = ScalarField(u.grid);
    return p;
  }
  p.V = solve_V(u);
  auto a = solve_A(u, model.gauge, model.solver, warm);
  p.A = std::move(a.A);
  p.iterations = a.iterations;
  p.residual = a.residual;
  return p;
}

SimState make_state(SpinorField u, const Model& model, double t) {
  if (model.epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  SimState s;
  s.t = t;
  s.model = model;
  s.Q0 = norm_squared(u);
  auto p = solve_potentials(u, model);
  s.u = std::move(u);
  s.A = std::move(p.A);
  s.V = std::move(p.V);
  s.solver_iterations = p.iterations;
  s.solver_residual = p.residual;
  return s;
}

SpinorField apply_H(const SpinorField& u, const VectorField& A, const ScalarField& V) {
  require_same_grid(u.grid, V.grid);
  SpinorField out = spin_magnetic_laplacian(u, A, SpinLaplacianMode::direct);
  out *= -0.5;
  for (std::size_t p = 0; p < V.values.size(); ++p) {
    out.u1[p] += V[p] * u.u1[p];
    out.u2[p] += V[p] * u.u2[p];
  }
  return out;
}

double expectation_H(const SimState& s) { return inner_product(s.u, apply_H(s.u, s.A, s.V)).real(); }

double expectation_H_identity(const SimState& s) {
  return 0.5 * norm_squared(pauli_operator(s.u, s.A)) + gradient_norm_squared(s.V);
}

double charge(const SimState& s) { return norm_squared(s.u); }

EnergyTerms energy_terms(const SimState& s) {
  EnergyTerms e;
  e.pauli = norm_squared(pauli_operator(s.u, s.A));
  e.magnetic = gradient_norm_squared(s.A);
  e.electric = gradient_norm_squared(s.V);
  return e;
}

double energy(const SimState& s) { return energy_terms(s).total(); }

SpinorField regularized_rhs(const SpinorField& u, const SpinorField& Hu, double epsilon, double Q0) {
  SpinorField out = cplx{-epsilon, -1.0} * Hu;
  if (epsilon != 0.0) {
    if (!(Q0 > 0.0)) throw std::invalid_argument("regularized_rhs: Q0 must be positive");
    const double uHu = inner_product(u, Hu).real();
    out.axpy(epsilon * uHu / Q0, u);
  }
  return out;
}

SpinorField regularized_rhs(const SimState& s) {
  return regularized_rhs(s.u, apply_H(s.u, s.A, s.V), s.model.epsilon, s.Q0);
}

}  // namespace pauli
