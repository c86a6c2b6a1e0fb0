#include "pauli/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pauli/errors.hpp"
#include "pauli/fft.hpp"
#include "pauli/spectral.hpp"
#include "pauli/spinor.hpp"

namespace pauli {
namespace {

// Gauss-Legendre nodes on [0, 1].
const std::array<double, 3> kNodes{0.5 - std::sqrt(15.0) / 10.0, 0.5, 0.5 + std::sqrt(15.0) / 10.0};

// Monomial coefficients of the Lagrange basis polynomials on kNodes:
// l_j(theta) = sum_m coeff[j][m] theta^m.
std::array<std::array<double, 3>, 3> lagrange_coefficients() {
  std::array<std::array<double, 3>, 3> p{};
  for (int j = 0; j < 3; ++j) {
    const double a = kNodes[(j + 1) % 3];
    const double b = kNodes[(j + 2) % 3];
    const double d = (kNodes[j] - a) * (kNodes[j] - b);
    p[j] = {a * b / d, -(a + b) / d, 1.0 / d};
  }
  return p;
}

SpinorField rhs_with(const SpinorField& u, const Potentials& p, double epsilon, double Q0) {
  return regularized_rhs(u, apply_H(u, p.A, p.V), epsilon, Q0);
}

double relative_change(const SpinorField& next, const SpinorField& prev) {
  const double denom = std::sqrt(norm_squared(next));
  const double diff = std::sqrt(norm_squared(next - prev));
  return denom > 0.0 ? diff / denom : diff;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::rk4 ? "rk4" : "semigroup_picard"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "rk4") return Scheme::rk4;
  if (s == "semigroup_picard") return Scheme::semigroup_picard;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected rk4 or semigroup_picard)");
}

std::array<cplx, 5> phi_functions(cplx z) {
  std::array<cplx, 5> phi{};
  if (std::abs(z) < 1.0) {
    constexpr int kTerms = 24;
    std::array<double, kTerms + 5> inv_factorial{};
    inv_factorial[0] = 1.0;
    for (std::size_t q = 1; q < inv_factorial.size(); ++q) inv_factorial[q] = inv_factorial[q - 1] / q;
    for (int p = 0; p < 5; ++p) {
      cplx acc = inv_factorial[kTerms + p];
      for (int j = kTerms - 1; j >= 0; --j) acc = acc * z + inv_factorial[j + p];
      phi[p] = acc;
    }
    return phi;
  }
  phi[0] = std::exp(z);
  double factorial = 1.0;
  for (int p = 0; p < 4; ++p) {
    if (p > 0) factorial *= p;
    phi[p + 1] = (phi[p] - 1.0 / factorial) / z;
  }
  return phi;
}

SpinorField semigroup_remainder(const SpinorField& u, const VectorField& A, const ScalarField& V, double epsilon,
                                double Q0) {
  const Grid& g = u.grid;
  SpinorField out = regularized_rhs(u, apply_H(u, A, V), epsilon, Q0);
  // Subtract the free part (i + eps) Lap u / 2 that the propagator handles exactly.
  const cplx c = 0.5 * cplx{epsilon, 1.0};
  for (int comp = 0; comp < 2; ++comp) {
    const auto lap = laplacian(g, u[comp]);
    for (std::size_t p = 0; p < g.size(); ++p) out[comp][p] -= c * lap[p];
  }
  return out;
}

Stepper::Stepper(const Grid& grid, double dt, double epsilon, const StepOptions& opts)
    : grid_(grid), dt_(dt), epsilon_(epsilon), opts_(opts) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  if (epsilon < 0.0) throw std::invalid_argument("step: epsilon must be >= 0");
  if (opts.scheme != Scheme::semigroup_picard) return;
  if (!(opts.picard_tol > 0.0)) throw std::invalid_argument("step: picard_tol must be positive");
  if (opts.picard_max_iterations < 1) throw std::invalid_argument("step: picard_max_iterations must be >= 1");

  const auto coeff = lagrange_coefficients();
  const std::size_t size = grid.size();
  for (auto& v : stage_propagator_) v.resize(size);
  step_propagator_.resize(size);
  for (auto& row : stage_weight_)
    for (auto& v : row) v.resize(size);
  for (auto& v : step_weight_) v.resize(size);

  const auto& w = grid.wavenumbers;
  const cplx symbol = -0.5 * cplx{epsilon, 1.0};
  spectral::for_each_mode(grid, [&](std::size_t idx, int i, int j, int k) {
    const double k2 = w[i] * w[i] + w[j] * w[j] + w[k] * w[k];
    const cplx z = dt * symbol * k2;
    const auto phi_full = phi_functions(z);
    step_propagator_[idx] = phi_full[0];
    for (int jj = 0; jj < 3; ++jj) {
      step_weight_[jj][idx] = coeff[jj][0] * phi_full[1] + coeff[jj][1] * phi_full[2] + 2.0 * coeff[jj][2] * phi_full[3];
    }
    for (int ii = 0; ii < 3; ++ii) {
      const double c = kNodes[ii];
      const auto phi = phi_functions(c * z);
      stage_propagator_[ii][idx] = phi[0];
      for (int jj = 0; jj < 3; ++jj) {
        stage_weight_[ii][jj][idx] = coeff[jj][0] * c * phi[1] + coeff[jj][1] * c * c * phi[2] +
                                     2.0 * coeff[jj][2] * c * c * c * phi[3];
      }
    }
  });
}

SimState Stepper::step(const SimState& s) const {
  require_same_grid(grid_, s.u.grid);
  if (s.model.epsilon != epsilon_) throw std::invalid_argument("step: state epsilon differs from the stepper's");
  return opts_.scheme == Scheme::rk4 ? rk4(s) : semigroup(s);
}

SimState Stepper::finish(const SimState& s, SpinorField u) const {
  if (opts_.dealias) dealias(u);
  SimState next;
  next.t = s.t + dt_;
  next.model = s.model;
  next.Q0 = s.Q0;
  auto p = solve_potentials(u, s.model, &s.A);
  next.u = std::move(u);
  next.A = std::move(p.A);
  next.V = std::move(p.V);
  next.solver_iterations = p.iterations;
  next.solver_residual = p.residual;
  return next;
}

SimState Stepper::rk4(const SimState& s) const {
  const double h = dt_;
  const double eps = s.model.epsilon;
  const SpinorField k1 = regularized_rhs(s);

  SpinorField u2 = s.u;
  u2.axpy(0.5 * h, k1);
  const Potentials p2 = solve_potentials(u2, s.model, &s.A);
  const SpinorField k2 = rhs_with(u2, p2, eps, s.Q0);

  SpinorField u3 = s.u;
  u3.axpy(0.5 * h, k2);
  const Potentials p3 = solve_potentials(u3, s.model, &p2.A);
  const SpinorField k3 = rhs_with(u3, p3, eps, s.Q0);

  SpinorField u4 = s.u;
  u4.axpy(h, k3);
  const Potentials p4 = solve_potentials(u4, s.model, &p3.A);
  const SpinorField k4 = rhs_with(u4, p4, eps, s.Q0);

  SpinorField u1 = s.u;
  u1.axpy(h / 6.0, k1);
  u1.axpy(h / 3.0, k2);
  u1.axpy(h / 3.0, k3);
  u1.axpy(h / 6.0, k4);
  return finish(s, std::move(u1));
}

SimState Stepper::semigroup(const SimState& s) const {
  const Grid& g = grid_;
  const double h = dt_;
  const double eps = s.model.epsilon;
  const std::array<ComplexArray, 2> u0_hat{fft::forward(g, s.u.u1), fft::forward(g, s.u.u2)};

  // Free evolution of u0 to each node; also the first Picard guess.
  std::array<SpinorField, 3> stage{SpinorField(g), SpinorField(g), SpinorField(g)};
  std::array<std::array<ComplexArray, 2>, 3> free_hat;
  for (int i = 0; i < 3; ++i) {
    for (int c = 0; c < 2; ++c) {
      free_hat[i][c].resize(g.size());
      for (std::size_t p = 0; p < g.size(); ++p) free_hat[i][c][p] = stage_propagator_[i][p] * u0_hat[c][p];
      fft::inverse(g, free_hat[i][c], stage[i][c]);
    }
  }

  std::array<VectorField, 3> warm{s.A, s.A, s.A};
  std::array<std::array<ComplexArray, 2>, 3> r_hat;
  ComplexArray buf(g.size());
  double update = INFINITY;
  int it = 0;
  while (true) {
    ++it;
    for (int j = 0; j < 3; ++j) {
      Potentials p = solve_potentials(stage[j], s.model, &warm[j]);
      const SpinorField r = semigroup_remainder(stage[j], p.A, p.V, eps, s.Q0);
      warm[j] = std::move(p.A);
      for (int c = 0; c < 2; ++c) r_hat[j][c] = fft::forward(g, r[c]);
    }
    update = 0.0;
    for (int i = 0; i < 3; ++i) {
      SpinorField next(g);
      for (int c = 0; c < 2; ++c) {
        for (std::size_t p = 0; p < g.size(); ++p) {
          buf[p] = free_hat[i][c][p] + h * (stage_weight_[i][0][p] * r_hat[0][c][p] +
                                            stage_weight_[i][1][p] * r_hat[1][c][p] +
                                            stage_weight_[i][2][p] * r_hat[2][c][p]);
        }
        fft::inverse(g, buf, next[c]);
      }
      update = std::max(update, relative_change(next, stage[i]));
      stage[i] = std::move(next);
    }
    if (update <= opts_.picard_tol) break;
    if (it >= opts_.picard_max_iterations) {
      last_picard_ = it;
      throw PicardNonConvergence("semigroup step at t=" + std::to_string(s.t) + ": Picard update " +
                                     std::to_string(update) + " after " + std::to_string(it) +
                                     " iterations; reduce dt",
                                 it, update);
    }
  }
  last_picard_ = it;

  // The remainders from the last sweep differ from those of the converged
  // stages by O(h * picard_tol).
  SpinorField u1(g);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t p = 0; p < g.size(); ++p) {
      buf[p] = step_propagator_[p] * u0_hat[c][p] +
               h * (step_weight_[0][p] * r_hat[0][c][p] + step_weight_[1][p] * r_hat[1][c][p] +
                    step_weight_[2][p] * r_hat[2][c][p]);
    }
    fft::inverse(g, buf, u1[c]);
  }
  return finish(s, std::move(u1));
}

SimState step(const SimState& s, double dt, const StepOptions& opts) {
  return Stepper(s.u.grid, dt, s.model.epsilon, opts).step(s);
}

int step_count(double T, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (T < 0.0) throw std::invalid_argument("T must be >= 0");
  return static_cast<int>(std::llround(T / dt));
}

void evolve(const SpinorField& initial, const Model& model, const EvolveOptions& opts, Trajectory& out) {
  if (opts.stride < 1) throw std::invalid_argument("evolve: stride must be >= 1");
  if (!(norm_squared(initial) > 0.0)) throw std::invalid_argument("evolve: initial data must be nonzero");
  const int nsteps = step_count(opts.T, opts.dt);
  const double dt = nsteps > 0 ? opts.T / nsteps : opts.dt;
  out = Trajectory{};
  out.dt = dt;

  SimState state = make_state(initial, model);
  auto record = [&](const SimState& s, const SimState* prev) {
    DiagnosticsRecord r = make_record(s, opts.hs_order);
    if (prev != nullptr) r.continuity_residual = continuity_residual(*prev, s, dt);
    out.records.push_back(r);
    if (opts.keep_states) out.states.push_back(s);
    if (opts.on_record) opts.on_record(s, r);
  };

  try {
    record(state, nullptr);
    if (nsteps == 0) return;
    const Stepper stepper(initial.grid, dt, model.epsilon, opts.step);
    for (int n = 1; n <= nsteps; ++n) {
      SimState next = stepper.step(state);
      // Keep the time exact rather than accumulated.
      next.t = n * dt;
      const double h1 = sobolev_norm(next.u, 1.0);
      const bool blown = !(h1 <= opts.blowup_guard);
      out.steps = n;
      if (n % opts.stride == 0 || n == nsteps || blown) record(next, &state);
      if (blown) {
        throw BlowUpGuardTriggered("H1 norm " + std::to_string(h1) + " exceeded the guard " +
                                       std::to_string(opts.blowup_guard) + " at t=" + std::to_string(next.t),
                                   next.t, h1);
      }
      state = std::move(next);
    }
  } catch (...) {
    fill_dissipation_residuals(out.records);
    throw;
  }
  fill_dissipation_residuals(out.records);
}

Trajectory evolve(const SpinorField& initial, const Model& model, const EvolveOptions& opts) {
  Trajectory t;
  evolve(initial, model, opts, t);
  return t;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need at least two points");
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SweepResult epsilon_sweep(const SpinorField& initial, const Model& model, const std::vector<double>& epsilons,
                          const EvolveOptions& opts) {
  if (epsilons.size() < 3) throw std::invalid_argument("epsilon_sweep: need at least three epsilons");
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (epsilons[i] > epsilons[i - 1]) throw std::invalid_argument("epsilon_sweep: epsilons must be sorted descending");
  }
  std::vector<std::vector<SpinorField>> paths;
  for (double eps : epsilons) {
    Model m = model;
    m.epsilon = eps;
    EvolveOptions o = opts;
    o.keep_states = false;
    std::vector<SpinorField> path;
    o.on_record = [&](const SimState& s, const DiagnosticsRecord& r) {
      path.push_back(s.u);
      if (opts.on_record) opts.on_record(s, r);
    };
    evolve(initial, m, o);
    paths.push_back(std::move(path));
  }

  SweepResult result;
  std::vector<double> gaps, devs;
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
    SweepRow row{epsilons[i], epsilons[i + 1], 0.0};
    for (std::size_t k = 0; k < paths[i].size(); ++k) {
      row.deviation = std::max(row.deviation, std::sqrt(norm_squared(paths[i][k] - paths[i + 1][k])));
    }
    result.rows.push_back(row);
    const double gap = std::abs(row.epsilon_a - row.epsilon_b);
    if (gap > 0.0 && row.deviation > 0.0) {
      gaps.push_back(gap);
      devs.push_back(row.deviation);
    }
  }
  // Deviations must shrink together with the epsilon gaps.
  std::vector<std::size_t> order(result.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(result.rows[a].epsilon_a - result.rows[a].epsilon_b) >
           std::abs(result.rows[b].epsilon_a - result.rows[b].epsilon_b);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!(result.rows[order[i]].deviation < result.rows[order[i - 1]].deviation)) result.monotone = false;
  }
  result.slope = gaps.size() >= 2 ? loglog_slope(gaps, devs) : std::nan("");
  return result;
}

}  // namespace pauli
