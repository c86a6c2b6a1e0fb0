#include "pauli/field_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pauli/errors.hpp"
#include "pauli/spectral.hpp"
#include "pauli/spinor.hpp"

namespace pauli {

using spectral::HalfSpectrum;

namespace {

constexpr double kResidualFloor = 1e-30;

double k_squared(const Grid& g, int i, int j, int k) {
  const auto& w = g.wavenumbers;
  return w[i] * w[i] + w[j] * w[j] + w[k] * w[k];
}

std::array<HalfSpectrum, 3> forward3(const Grid& g, const VectorField& v) {
  return {spectral::forward(g, v[0]), spectral::forward(g, v[1]), spectral::forward(g, v[2])};
}

void apply_gauge_projection(const Grid& g, Gauge gauge, std::array<HalfSpectrum, 3>& s) {
  if (gauge == Gauge::darwin) spectral::leray_inplace(g, s);
  for (auto& c : s) spectral::remove_mean_inplace(c);
}

}  // namespace

std::string to_string(Gauge g) { return g == Gauge::darwin ? "darwin" : "poisswell"; }

Gauge parse_gauge(const std::string& s) {
  if (s == "darwin") return Gauge::darwin;
  if (s == "poisswell") return Gauge::poisswell;
  throw std::invalid_argument("unknown gauge '" + s + "' (expected darwin or poisswell)");
}

void ASolveOptions::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("field_solver.tolerance must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("field_solver.max_iterations must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("field_solver.damping must lie in (0, 1]");
}

ScalarField solve_V(const SpinorField& u) { return inv_neg_laplacian(charge_density(u)); }

ASolveResult solve_A(const SpinorField& u, Gauge gauge, const ASolveOptions& opts, const VectorField* initial_guess) {
  opts.validate();
  const Grid& g = u.grid;
  const ScalarField rho = charge_density(u);

  const VectorField f = current_source(u, opts.current_form);
  auto f_hat = forward3(g, f);
  const double f_norm = std::max(l2_norm(f), kResidualFloor);
  apply_gauge_projection(g, gauge, f_hat);

  ASolveResult result;
  result.A = VectorField(g);
  if (opts.warm_start && initial_guess != nullptr) {
    require_same_grid(g, initial_guess->grid);
    result.A = *initial_guess;
  }

  std::array<HalfSpectrum, 3> a_hat = forward3(g, result.A);
  VectorField rhoA(g);
  double previous = INFINITY;
  for (int it = 0;; ++it) {
    // target = P0 G (f - rho A), assembled as P0 G f - P0 G (rho A)
    for (int c = 0; c < 3; ++c)
      for (std::size_t p = 0; p < g.size(); ++p) rhoA[c][p] = rho[p] * result.A[c][p];
    auto target = forward3(g, rhoA);
    apply_gauge_projection(g, gauge, target);
    for (int c = 0; c < 3; ++c)
      for (std::size_t p = 0; p < target[c].size(); ++p) target[c][p] = f_hat[c][p] - target[c][p];

    // residual = |k|^2 A_hat - target
    double res2 = 0.0;
    spectral::for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) {
      const double k2 = k_squared(g, i, j, k);
      for (int c = 0; c < 3; ++c) res2 += spectral::half_weight(g, i) * std::norm(k2 * a_hat[c][idx] - target[c][idx]);
    });
    const double residual = std::sqrt(res2 * g.cell_volume() / static_cast<double>(g.size())) / f_norm;
    result.iterations = it;
    result.residual = residual;
    if (residual <= opts.tolerance) return result;
    if (residual > previous) {
      throw NonConvergence("solve_A: residual increased from " + std::to_string(previous) + " to " +
                               std::to_string(residual) + " at iteration " + std::to_string(it),
                           it, residual);
    }
    if (it >= opts.max_iterations) {
      throw NonConvergence("solve_A: no convergence within " + std::to_string(opts.max_iterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           it, residual);
    }
    previous = residual;

    spectral::inv_neg_laplacian_inplace(g, target[0]);
    spectral::inv_neg_laplacian_inplace(g, target[1]);
    spectral::inv_neg_laplacian_inplace(g, target[2]);
    for (int c = 0; c < 3; ++c) {
      for (std::size_t p = 0; p < a_hat[c].size(); ++p) {
        a_hat[c][p] = (1.0 - opts.damping) * a_hat[c][p] + opts.damping * target[c][p];
      }
      result.A[c] = spectral::inverse(g, a_hat[c]);
    }
  }
}

double a_equation_residual(const SpinorField& u, const VectorField& A, Gauge gauge, CurrentForm form) {
  require_same_grid(u.grid, A.grid);
  const Grid& g = u.grid;
  const double f_norm = std::max(l2_norm(current_source(u, form)), kResidualFloor);
  VectorField source = current_density(u, A, form);
  if (gauge == Gauge::darwin) source = leray_project(source);
  VectorField r(g);
  for (int c = 0; c < 3; ++c) {
    const ScalarField lap = laplacian(A.component(kAxes[c]));
    const double m = mean(source.component(kAxes[c]));
    for (std::size_t p = 0; p < g.size(); ++p) r[c][p] = -lap[p] - (source[c][p] - m);
  }
  return l2_norm(r) / f_norm;
}

double gauge_residual(const SpinorField& u, const VectorField& A, Gauge gauge, CurrentForm form) {
  const ScalarField divA = divergence(A);
  if (gauge == Gauge::darwin) return l2_norm(divA);
  const ScalarField dVdt = inv_neg_laplacian(-1.0 * divergence(current_density(u, A, form)));
  return l2_norm(divA + dVdt);
}

EllipticReport elliptic_estimate_report(const SpinorField& u, const VectorField& A, const ScalarField& V) {
  EllipticReport r;
  const double h1 = sobolev_norm(u, 1.0);
  if (h1 == 0.0) return r;
  r.grad_A_ratio = std::sqrt(gradient_norm_squared(A)) / h1;
  r.V_ratio = sobolev_norm(V, 1.0) / (h1 * h1);
  return r;
}

}  // namespace pauli
