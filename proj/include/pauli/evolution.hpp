#pragma once

// Time integration of the regularized flow
//   du/dt = -(i + eps) H u + eps (u, H u) / Q0 u
// with the potentials re-solved from u at every stage evaluation.

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "pauli/diagnostics.hpp"
#include "pauli/hamiltonian.hpp"

namespace pauli {

enum class Scheme {
  /// Classical four-stage Runge-Kutta on the full right-hand side.
  rk4,
  /// Exponential collocation at three Gauss-Legendre nodes: the free part
  /// exp((i + eps) t Lap / 2) is applied exactly and the remainder is
  /// integrated through its Duhamel formula by Picard iteration.
  semigroup_picard,
};

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

struct StepOptions {
  Scheme scheme = Scheme::rk4;
  double picard_tol = 1e-10;
  int picard_max_iterations = 25;
  /// Two-thirds truncation of u after every step.
  bool dealias = true;
};

/// Advances states by a fixed dt. Caches the exponential weights, so reuse
/// one instance for a whole run.
class Stepper {
 public:
  Stepper(const Grid& grid, double dt, double epsilon, const StepOptions& opts);

  SimState step(const SimState& s) const;

  double dt() const { return dt_; }
  /// Picard iterations used by the last semigroup step.
  int last_picard_iterations() const { return last_picard_; }

 private:
  SimState rk4(const SimState& s) const;
  SimState semigroup(const SimState& s) const;
  SimState finish(const SimState& s, SpinorField u) const;

  Grid grid_;
  double dt_;
  double epsilon_;
  StepOptions opts_;
  // Per-mode exponential weights (semigroup scheme only).
  std::array<ComplexArray, 3> stage_propagator_;
  ComplexArray step_propagator_;
  std::array<std::array<ComplexArray, 3>, 3> stage_weight_;
  std::array<ComplexArray, 3> step_weight_;
  mutable int last_picard_ = 0;
};

/// Convenience wrapper constructing a one-off Stepper.
SimState step(const SimState& s, double dt, const StepOptions& opts = {});

/// Remainder R(u) = -(i + eps)(H u + Lap u / 2) + eps (u, H u) / Q0 u of the
/// right-hand side once the free part is split off.
SpinorField semigroup_remainder(const SpinorField& u, const VectorField& A, const ScalarField& V, double epsilon,
                                double Q0);

/// phi_p(z) = sum_j z^j / (j + p)!, for p = 0..4.
std::array<cplx, 5> phi_functions(cplx z);

struct EvolveOptions {
  double dt = 1e-3;
  double T = 1.0;
  StepOptions step{};
  /// Record diagnostics every `stride` steps; the final step is always recorded.
  int stride = 10;
  /// Keep a copy of the state at every record.
  bool keep_states = false;
  /// Abort once ||u||_{H^1} exceeds this.
  double blowup_guard = std::numeric_limits<double>::infinity();
  double hs_order = 2.0;
  /// Called after each record is made (for snapshots or progress output).
  std::function<void(const SimState&, const DiagnosticsRecord&)> on_record;
};

struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  /// Aligned with `records` when keep_states is set.
  std::vector<SimState> states;
  int steps = 0;
  double dt = 0.0;
};

/// Number of steps used for a span T: llround(T / dt), at least zero.
int step_count(double T, double dt);

/// Runs the flow from `initial`. The step size is adjusted to T / nsteps. On
/// failure the exception propagates and `out` holds everything recorded so far
/// (with dissipation residuals filled in).
void evolve(const SpinorField& initial, const Model& model, const EvolveOptions& opts, Trajectory& out);
Trajectory evolve(const SpinorField& initial, const Model& model, const EvolveOptions& opts);

struct SweepRow {
  double epsilon_a = 0.0;
  double epsilon_b = 0.0;
  /// sup over recorded times of ||u_a - u_b||_{L^2}
  double deviation = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Least-squares slope of log(deviation) against log|eps_a - eps_b|.
  double slope = 0.0;
  bool monotone = true;
};

/// Runs one trajectory per epsilon (sorted descending, at least three) and
/// compares consecutive pairs.
SweepResult epsilon_sweep(const SpinorField& initial, const Model& model, const std::vector<double>& epsilons,
                          const EvolveOptions& opts);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pauli
