#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pauli/hamiltonian.hpp"

namespace pauli {

struct DiagnosticsRecord {
  double t = 0.0;
  double Q = 0.0;
  double E = 0.0;
  double uHu = 0.0;
  double h1 = 0.0;
  double hs = 0.0;
  double continuity_residual = 0.0;
  double gauge_residual = 0.0;
  double dissipation_residual = 0.0;
  int solver_iters = 0;
  double solver_residual = 0.0;
  /// -4 eps (||Hu||^2 - (u,Hu)^2 / ||u||^2), the predicted dE/dt.
  double dissipation_rate = 0.0;
  /// ||Hu||^2 ||u||^2 - (u,Hu)^2, nonnegative by Cauchy-Schwarz.
  double cauchy_schwarz_gap = 0.0;
  double Hu_norm_squared = 0.0;
  /// ||A||_{L^2}, the scale of the Lorenz-gauge residual.
  double A_norm = 0.0;
};

/// Column header and row formatting shared by every CSV writer.
std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const DiagnosticsRecord& r);

/// Fills every field that depends on a single state. The continuity and
/// dissipation residuals are left at zero.
DiagnosticsRecord make_record(const SimState& s, double hs_order = 2.0);

/// || (|u_next|^2 - |u_prev|^2) / dt + div J(u_mid, A_mid) || with the
/// midpoint averages of u and A.
double continuity_residual(const SimState& prev, const SimState& next, double dt);

/// Three-point derivative on a possibly nonuniform grid; the two end points
/// use one-sided second-order stencils. Needs at least three samples.
std::vector<double> time_derivative(const std::vector<double>& t, const std::vector<double>& y);

/// |dE/dt - dissipation_rate| per record, dE/dt from time_derivative. Leaves
/// the residuals at zero when fewer than three records exist.
void fill_dissipation_residuals(std::vector<DiagnosticsRecord>& records);

struct H1BoundCheck {
  bool passed = true;
  double grad_u = 0.0;
  double bound = 0.0;
  /// bound - grad_u
  double margin = 0.0;
};

/// ||grad u|| <= c_guard (E0^{1/2} + E0 Q0^{1/2}).
H1BoundCheck h1_bound_check(const SpinorField& u, double E0, double Q0, double c_guard = 10.0);

/// Deliberate operator corruptions used to check that the identity suite
/// notices broken code.
enum class Mutation {
  none,
  /// Flip the sign of the sigma . B term in the decomposed Pauli operator.
  stern_gerlach_sign,
  /// Flip the sign of the spin-curl term in the Pauli current.
  spin_current_sign,
  /// Drop the div A term from the expanded magnetic Laplacian.
  drop_div_a,
};

Mutation parse_mutation(const std::string& s);

struct IdentityCheck {
  std::string name;
  int n = 0;
  int samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct IdentityReport {
  std::uint64_t seed = 0;
  std::vector<IdentityCheck> checks;
  bool passed() const;
  /// Fixed-format CSV with one line per (identity, n).
  std::string to_csv() const;
};

struct IdentitySuiteOptions {
  std::vector<int> resolutions{8, 16, 32};
  int samples = 4;
  Mutation mutation = Mutation::none;
};

IdentityReport identity_suite(std::uint64_t seed, const IdentitySuiteOptions& opts = {});

}  // namespace pauli
