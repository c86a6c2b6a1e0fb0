#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pauli/errors.hpp"
#include "pauli/field_solver.hpp"
#include "pauli/random_fields.hpp"
#include "pauli/spectral.hpp"
#include "pauli/spinor.hpp"
#include "support.hpp"

using namespace pauli;
using namespace pauli::test;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Smooth, moderately sized spinor so the A iteration contracts quickly.
SpinorField test_spinor(const Grid& g, std::uint64_t seed, double amplitude = 0.3) {
  Rng rng(seed);
  auto u = random_spinor(g, rng);
  u *= amplitude;
  return u;
}

}  // namespace

TEST_CASE("solve_V examples") {
  const Grid g = make_grid(16, kTwoPi);
  CHECK(max_abs(solve_V(SpinorField(g)).values) == 0.0);

  // |1 + e^{ix}|^2 / 4 = (1 + cos x) / 2 in each component.
  const auto u = sample_spinor(
      g, [](double x, double, double) { return 0.5 * (1.0 + std::exp(cplx(0, x))); },
      [](double x, double, double) { return cplx(0, 0.5) * (1.0 + std::exp(cplx(0, x))); });
  const auto rho = charge_density(u);
  const auto expected_rho = sample(g, [](double x, double, double) { return 1.0 + std::cos(x); });
  REQUIRE(max_diff(rho, expected_rho) < 1e-14);
  const auto V = solve_V(u);
  CHECK(max_diff(V, sample(g, [](double x, double, double) { return std::cos(x); })) < 1e-13);
}

TEST_CASE("solve_V energy identity ||grad V||^2 = int V (rho - mean)") {
  const Grid g = make_grid(16, 2.0);
  const auto u = test_spinor(g, 1, 1.0);
  const auto V = solve_V(u);
  auto rho = charge_density(u);
  const double m = mean(rho);
  for (auto& x : rho.values) x -= m;
  const double lhs = std::pow(l2_norm(gradient(V)), 2);
  const double rhs = l2_inner(V, rho);
  CHECK(lhs >= 0.0);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("solve_A with u = 0 gives A = 0") {
  const Grid g = make_grid(8, kTwoPi);
  for (Gauge gauge : {Gauge::darwin, Gauge::poisswell}) {
    const auto r = solve_A(SpinorField(g), gauge, {});
    CHECK(max_abs(r.A) == 0.0);
    CHECK(gauge_residual(SpinorField(g), r.A, gauge) == 0.0);
  }
}

TEST_CASE("solve_A Darwin: divergence free with small residual") {
  const Grid g = make_grid(16, kTwoPi);
  const auto u = test_spinor(g, 2);
  ASolveOptions opts;
  const auto r = solve_A(u, Gauge::darwin, opts);
  CHECK(r.residual <= opts.tolerance);
  CHECK(l2_norm(divergence(r.A)) <= 1e-12);
  CHECK(gauge_residual(u, r.A, Gauge::darwin) <= 1e-12);
  CHECK(a_equation_residual(u, r.A, Gauge::darwin) <= 10 * opts.tolerance);
  CHECK(std::abs(mean(r.A.component(Axis::y))) < 1e-15);
}

TEST_CASE("solve_A Poisswell: gauge residual and equation residual") {
  const Grid g = make_grid(16, kTwoPi);
  const auto u = test_spinor(g, 3);
  ASolveOptions opts;
  const auto r = solve_A(u, Gauge::poisswell, opts);
  CHECK(r.residual <= opts.tolerance);
  CHECK(a_equation_residual(u, r.A, Gauge::poisswell) <= 10 * opts.tolerance);
  CHECK(gauge_residual(u, r.A, Gauge::poisswell) <= 10 * opts.tolerance * l2_norm(r.A));
}

TEST_CASE("solve_A uniqueness from distinct initial guesses") {
  const Grid g = make_grid(16, kTwoPi);
  const auto u = test_spinor(g, 4);
  ASolveOptions opts;
  Rng rng(99);
  const auto guess = random_vector(g, rng);
  for (Gauge gauge : {Gauge::darwin, Gauge::poisswell}) {
    const auto cold = solve_A(u, gauge, opts);
    const auto warm = solve_A(u, gauge, opts, &guess);
    CHECK(max_diff(cold.A, warm.A) <= 10 * opts.tolerance * std::max(1.0, max_abs(cold.A)));
  }
}

TEST_CASE("solve_A current forms give the same potential") {
  const Grid g = make_grid(16, kTwoPi);
  const auto u = test_spinor(g, 5);
  ASolveOptions a, b;
  a.current_form = CurrentForm::pauli;
  b.current_form = CurrentForm::sigma;
  const auto Aa = solve_A(u, Gauge::darwin, a).A;
  const auto Ab = solve_A(u, Gauge::darwin, b).A;
  CHECK(l2_norm(Aa - Ab) <= 1e-10 * l2_norm(Aa));
}

TEST_CASE("solve_A rejects bad options and reports non-convergence") {
  const Grid g = make_grid(8, kTwoPi);
  const auto u = test_spinor(g, 6);
  ASolveOptions bad;
  bad.damping = 0.0;
  CHECK_THROWS_AS(solve_A(u, Gauge::darwin, bad), std::invalid_argument);

  ASolveOptions tight;
  tight.max_iterations = 1;
  tight.tolerance = 1e-15;
  CHECK_THROWS_AS(solve_A(u, Gauge::darwin, tight), NonConvergence);
}

TEST_CASE("elliptic estimate report") {
  const Grid g = make_grid(16, kTwoPi);
  const auto zero = SpinorField(g);
  const auto rep0 = elliptic_estimate_report(zero, VectorField(g), ScalarField(g));
  CHECK(rep0.grad_A_ratio == 0.0);
  CHECK(rep0.V_ratio == 0.0);

  // A smooth Gaussian sampled on n and 2n: the ratios barely move.
  auto gaussian = [](double x, double y, double z) {
    const double c = std::numbers::pi;
    const double r2 = (x - c) * (x - c) + (y - c) * (y - c) + (z - c) * (z - c);
    return cplx(std::exp(-r2 / (2 * 0.64)) * std::cos(x), std::exp(-r2 / (2 * 0.64)) * 0.5);
  };
  double previous[2] = {0, 0};
  for (int n : {16, 32}) {
    const Grid gn = make_grid(n, kTwoPi);
    const auto u = sample_spinor(gn, gaussian, [](double, double, double) { return cplx{}; });
    const auto A = solve_A(u, Gauge::darwin, {}).A;
    const auto rep = elliptic_estimate_report(u, A, solve_V(u));
    CHECK(rep.grad_A_ratio > 0.0);
    CHECK(rep.V_ratio > 0.0);
    if (previous[0] > 0.0) {
      CHECK(rep.grad_A_ratio == doctest::Approx(previous[0]).epsilon(0.05));
      CHECK(rep.V_ratio == doctest::Approx(previous[1]).epsilon(0.05));
    }
    previous[0] = rep.grad_A_ratio;
    previous[1] = rep.V_ratio;
  }
}

TEST_CASE("gauge parsing") {
  CHECK(parse_gauge("darwin") == Gauge::darwin);
  CHECK(parse_gauge("poisswell") == Gauge::poisswell);
  CHECK(to_string(Gauge::poisswell) == "poisswell");
  CHECK_THROWS_AS(parse_gauge("coulomb"), std::invalid_argument);
}
