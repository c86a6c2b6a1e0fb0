#include "pauli/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "pauli/magnetic.hpp"
#include "pauli/random_fields.hpp"
#include "pauli/spectral.hpp"
#include "pauli/spinor.hpp"

namespace pauli {

std::string diagnostics_csv_header() {
  return "t,Q,E,uHu,H1_norm,Hs_norm,continuity_residual,gauge_residual,dissipation_residual,solver_iters,"
         "solver_residual";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g", r.t, r.Q, r.E,
                r.uHu, r.h1, r.hs, r.continuity_residual, r.gauge_residual, r.dissipation_residual, r.solver_iters,
                r.solver_residual);
  return buf;
}

DiagnosticsRecord make_record(const SimState& s, double hs_order) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.Q = charge(s);
  r.E = energy(s);
  const SpinorField Hu = apply_H(s.u, s.A, s.V);
  r.uHu = inner_product(s.u, Hu).real();
  r.Hu_norm_squared = norm_squared(Hu);
  r.cauchy_schwarz_gap = r.Hu_norm_squared * r.Q - r.uHu * r.uHu;
  r.dissipation_rate = r.Q > 0.0 ? -4.0 * s.model.epsilon * (r.Hu_norm_squared - r.uHu * r.uHu / r.Q) : 0.0;
  r.h1 = sobolev_norm(s.u, 1.0);
  r.hs = sobolev_norm(s.u, hs_order);
  // Gauge residual refers to the current that actually sourced A.
  r.gauge_residual = s.model.coupling == Coupling::free ? 0.0
                                                         : gauge_residual(s.u, s.A, s.model.gauge, s.model.solver.current_form);
  r.A_norm = l2_norm(s.A);
  r.solver_iters = s.solver_iterations;
  r.solver_residual = s.solver_residual;
  return r;
}

double continuity_residual(const SimState& prev, const SimState& next, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("continuity_residual: dt must be positive");
  const Grid& g = prev.u.grid;
  require_same_grid(g, next.u.grid);
  SpinorField u_mid = prev.u + next.u;
  u_mid *= 0.5;
  const VectorField A_mid = 0.5 * (prev.A + next.A);
  const ScalarField divJ = divergence(current_density(u_mid, A_mid, prev.model.solver.current_form));
  const ScalarField rho_prev = charge_density(prev.u);
  const ScalarField rho_next = charge_density(next.u);
  ScalarField r(g);
  for (std::size_t p = 0; p < g.size(); ++p) r[p] = (rho_next[p] - rho_prev[p]) / dt + divJ[p];
  return l2_norm(r);
}

std::vector<double> time_derivative(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t m = t.size();
  if (m != y.size()) throw std::invalid_argument("time_derivative: size mismatch");
  if (m < 3) throw std::invalid_argument("time_derivative: need at least three samples");
  std::vector<double> d(m);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    d[i] = -h2 / (h1 * (h1 + h2)) * y[i - 1] + (h2 - h1) / (h1 * h2) * y[i] + h1 / (h2 * (h1 + h2)) * y[i + 1];
  }
  {
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    d[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * y[0] + (h1 + h2) / (h1 * h2) * y[1] - h1 / (h2 * (h1 + h2)) * y[2];
  }
  {
    const double h1 = t[m - 2] - t[m - 3];
    const double h2 = t[m - 1] - t[m - 2];
    d[m - 1] = h2 / (h1 * (h1 + h2)) * y[m - 3] - (h1 + h2) / (h1 * h2) * y[m - 2] +
               (2 * h2 + h1) / (h2 * (h1 + h2)) * y[m - 1];
  }
  return d;
}

void fill_dissipation_residuals(std::vector<DiagnosticsRecord>& records) {
  if (records.size() < 3) return;
  std::vector<double> t, e;
  for (const auto& r : records) {
    t.push_back(r.t);
    e.push_back(r.E);
  }
  const auto dE = time_derivative(t, e);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].dissipation_residual = std::abs(dE[i] - records[i].dissipation_rate);
}

H1BoundCheck h1_bound_check(const SpinorField& u, double E0, double Q0, double c_guard) {
  H1BoundCheck c;
  c.grad_u = std::sqrt(gradient_norm_squared(u));
  c.bound = c_guard * (std::sqrt(std::max(E0, 0.0)) + E0 * std::sqrt(std::max(Q0, 0.0)));
  c.margin = c.bound - c.grad_u;
  c.passed = c.grad_u <= c.bound;
  return c;
}

Mutation parse_mutation(const std::string& s) {
  if (s == "none") return Mutation::none;
  if (s == "stern_gerlach_sign") return Mutation::stern_gerlach_sign;
  if (s == "spin_current_sign") return Mutation::spin_current_sign;
  if (s == "drop_div_a") return Mutation::drop_div_a;
  throw std::invalid_argument("unknown mutation '" + s + "'");
}

bool IdentityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

std::string IdentityReport::to_csv() const {
  std::ostringstream os;
  os << "identity,n,samples,max_deviation,tolerance,status\n";
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6e,%.1e,%s\n", c.name.c_str(), c.n, c.samples, c.max_deviation,
                  c.tolerance, c.passed ? "pass" : "FAIL");
    os << buf;
  }
  return os.str();
}

namespace {

double rel_diff(const SpinorField& a, const SpinorField& b) {
  const double scale = std::max(std::sqrt(norm_squared(a)), std::sqrt(norm_squared(b)));
  return scale == 0.0 ? 0.0 : std::sqrt(norm_squared(a - b)) / scale;
}

double rel_diff(const VectorField& a, const VectorField& b) {
  const double scale = std::max(l2_norm(a), l2_norm(b));
  return scale == 0.0 ? 0.0 : l2_norm(a - b) / scale;
}

double matrix_deviation(const Mat2& a, const Mat2& b) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

double product_law_deviation() {
  const cplx I{0.0, 1.0};
  const Mat2 id{{{cplx{1}, cplx{0}}, {cplx{0}, cplx{1}}}};
  double d = 0.0;
  for (int i = 1; i <= 3; ++i) {
    d = std::max(d, matrix_deviation(matmul(pauli_matrix(i), pauli_matrix(i)), id));
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      const int k = 6 - i - j;
      // Levi-Civita sign of (i, j, k).
      const double sign = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
      Mat2 rhs = pauli_matrix(k);
      for (auto& row : rhs)
        for (auto& x : row) x *= I * sign;
      d = std::max(d, matrix_deviation(matmul(pauli_matrix(i), pauli_matrix(j)), rhs));
    }
  }
  return d;
}

struct Accumulator {
  std::vector<IdentityCheck>& out;
  int n;
  int samples;
  void add(const std::string& name, double tol, double value) {
    for (auto& c : out) {
      if (c.name == name && c.n == n) {
        c.max_deviation = std::max(c.max_deviation, value);
        c.passed = c.max_deviation <= c.tolerance;
        return;
      }
    }
    out.push_back(IdentityCheck{name, n, samples, value, tol, value <= tol});
  }
};

}  // namespace

IdentityReport identity_suite(std::uint64_t seed, const IdentitySuiteOptions& opts) {
  IdentityReport report;
  report.seed = seed;
  Rng rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const cplx I{0.0, 1.0};

  for (int n : opts.resolutions) {
    const Grid g = make_grid(n, 2.0 * 3.14159265358979323846);
    Accumulator acc{report.checks, n, opts.samples};
    acc.add("pauli_product_laws", 1e-15, product_law_deviation());

    for (int s = 0; s < opts.samples; ++s) {
      const SpinorField u = random_spinor(g, rng);
      const SpinorField w = random_spinor(g, rng);
      const VectorField A = random_vector(g, rng);
      const std::array<double, 3> v{uni(rng), uni(rng), uni(rng)};

      {
        const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        SpinorField expect = u;
        expect *= v2;
        acc.add("sigma_dot_square", 1e-13, rel_diff(sigma_dot(v, sigma_dot(v, u)), expect));
      }

      const SpinorField direct = spin_magnetic_laplacian(u, A, SpinLaplacianMode::direct);
      {
        SpinorField decomposed = magnetic_laplacian_expanded(u, A);
        const SpinorField sb = sigma_dot(curl(A), u);
        decomposed.axpy(opts.mutation == Mutation::stern_gerlach_sign ? -1.0 : 1.0, sb);
        acc.add("spin_magnetic_laplacian", 1e-11, rel_diff(direct, decomposed));
      }

      {
        SpinorField expanded = magnetic_laplacian_expanded(u, A);
        if (opts.mutation == Mutation::drop_div_a) expanded.axpy(I, multiply(divergence(A), u));
        acc.add("magnetic_laplacian_expansion", 1e-11, rel_diff(magnetic_laplacian(u, A), expanded));
      }

      {
        VectorField pauli_form = current_density(u, A, CurrentForm::pauli);
        if (opts.mutation == Mutation::spin_current_sign) pauli_form = pauli_form - curl(spin_density(u));
        acc.add("current_forms", 1e-11, rel_diff(pauli_form, current_density(u, A, CurrentForm::sigma)));
      }

      {
        // J(u, A) = J(u, 0) - |u|^2 A, with the left side built from magnetic_gradient.
        const auto grad_A = magnetic_gradient(u, A);
        const VectorField half_curl = 0.5 * curl(spin_density(u));
        VectorField lhs(g);
        for (int a = 0; a < 3; ++a)
          for (std::size_t p = 0; p < g.size(); ++p)
            lhs[a][p] = (std::conj(u.u1[p]) * grad_A[a].u1[p] + std::conj(u.u2[p]) * grad_A[a].u2[p]).imag() +
                        half_curl[a][p];
        VectorField rhs = current_source(u, CurrentForm::pauli);
        const ScalarField rho = charge_density(u);
        for (int a = 0; a < 3; ++a)
          for (std::size_t p = 0; p < g.size(); ++p) rhs[a][p] -= rho[p] * A[a][p];
        acc.add("current_gauge_shift", 1e-12, rel_diff(lhs, rhs));
      }

      {
        SpinorField rotated = u;
        rotated *= std::polar(1.0, 0.7);
        acc.add("current_phase_invariance", 1e-13,
                rel_diff(current_density(rotated, A), current_density(u, A)));
      }

      {
        // (w, P^2 u) - (P^2 w, u), scaled by the sizes of both pairings.
        const SpinorField pw = spin_magnetic_laplacian(w, A, SpinLaplacianMode::direct);
        const cplx a = inner_product(w, direct);
        const cplx b = inner_product(pw, u);
        const double scale = std::sqrt(norm_squared(w) * norm_squared(direct)) + std::sqrt(norm_squared(pw) * norm_squared(u));
        acc.add("pauli_operator_symmetry", 1e-11, std::abs(a - b) / scale);
      }

      {
        const VectorField J = current_density(u, A);
        const VectorField PJ = leray_project(J);
        acc.add("leray_idempotence", 1e-13, rel_diff(leray_project(PJ), PJ));
        acc.add("leray_divergence", 1e-12, l2_norm(divergence(PJ)) / l2_norm(J));
      }

      {
        const ScalarField rho = charge_density(u);
        const VectorField sd = spin_density(u);
        double worst = 0.0, peak = 0.0;
        for (std::size_t p = 0; p < g.size(); ++p) {
          const double m = std::sqrt(sd[0][p] * sd[0][p] + sd[1][p] * sd[1][p] + sd[2][p] * sd[2][p]);
          worst = std::max(worst, m - rho[p]);
          peak = std::max(peak, rho[p]);
        }
        acc.add("spin_density_bound", 1e-13, std::max(worst, 0.0) / peak);
      }
    }
  }
  return report;
}

}  // namespace pauli
