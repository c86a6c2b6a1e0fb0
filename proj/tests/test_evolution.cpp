#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pauli/errors.hpp"
#include "pauli/evolution.hpp"
#include "pauli/random_fields.hpp"
#include "pauli/spectral.hpp"
#include "pauli/spinor.hpp"
#include "support.hpp"

using namespace pauli;
using namespace pauli::test;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx I{0.0, 1.0};

SpinorField plane_wave(const Grid& g, int mx, int my, int mz) {
  return sample_spinor(
      g, [=](double x, double y, double z) { return std::exp(I * (mx * x + my * y + mz * z)); },
      [](double, double, double) { return cplx{}; });
}

Model free_model(double eps) {
  Model m;
  m.coupling = Coupling::free;
  m.epsilon = eps;
  return m;
}

}  // namespace

TEST_CASE("phi functions") {
  const auto at0 = phi_functions(0.0);
  const double fact[5] = {1, 1, 2, 6, 24};
  for (int p = 0; p < 5; ++p) CHECK(std::abs(at0[p] - 1.0 / fact[p]) < 1e-16);

  for (cplx z : {cplx(0.3, -0.2), cplx(-2.0, 5.0), cplx(-40.0, 1.0), cplx(0.0, 1e-3)}) {
    const auto phi = phi_functions(z);
    const cplx e = std::exp(z);
    CHECK(std::abs(phi[0] - e) <= 1e-14 * std::abs(e) + 1e-16);
    // Recurrence phi_{p+1} = (phi_p - 1/p!) / z checked on the closed forms.
    const cplx p1 = (e - 1.0) / z;
    const cplx p2 = (e - 1.0 - z) / (z * z);
    if (std::abs(z) > 0.5) {
      CHECK(std::abs(phi[1] - p1) <= 1e-13 * std::abs(p1));
      CHECK(std::abs(phi[2] - p2) <= 1e-13 * std::abs(p2));
    }
    for (int p = 0; p < 4; ++p) {
      // z phi_{p+1} + 1/p! = phi_p
      CHECK(std::abs(z * phi[p + 1] + 1.0 / fact[p] - phi[p]) <= 1e-13 * (1.0 + std::abs(phi[p])));
    }
  }
}

TEST_CASE("scheme parsing and step counts") {
  CHECK(parse_scheme("rk4") == Scheme::rk4);
  CHECK(parse_scheme("semigroup_picard") == Scheme::semigroup_picard);
  CHECK(to_string(Scheme::semigroup_picard) == "semigroup_picard");
  CHECK_THROWS_AS(parse_scheme("euler"), std::invalid_argument);
  CHECK(step_count(1.0, 1e-3) == 1000);
  CHECK(step_count(0.0, 0.1) == 0);
  CHECK_THROWS_AS(step_count(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("semigroup step is exact on free plane waves") {
  const Grid g = make_grid(8, kTwoPi);
  const double dt = 0.05;
  StepOptions opts;
  opts.scheme = Scheme::semigroup_picard;
  // At eps > 0 the remainder eps lambda u is nonzero, so the Picard tolerance
  // bounds the error.
  for (auto [eps, tol] : {std::pair{0.0, 1e-12}, std::pair{0.2, 1e-9}}) {
    auto s = make_state(plane_wave(g, 1, 2, 0), free_model(eps));
    const auto u0 = s.u;
    const Stepper stepper(g, dt, eps, opts);
    for (int n = 0; n < 10; ++n) s = stepper.step(s);
    // Charge is conserved by the flow, so the phase alone evolves.
    const double lambda = 0.5 * 5.0;
    const auto expected = std::exp(-I * lambda * (10 * dt)) * u0;
    CHECK(max_diff(s.u, expected) <= tol);
  }
}

TEST_CASE("RK4 phase error on a free plane wave is fourth order") {
  const Grid g = make_grid(8, kTwoPi);
  const auto u0 = plane_wave(g, 1, 0, 0);
  double previous = 0.0;
  for (double dt : {0.2, 0.1}) {
    auto s = make_state(u0, free_model(0.0));
    const int steps = static_cast<int>(std::llround(0.8 / dt));
    const Stepper stepper(g, dt, 0.0, {});
    for (int n = 0; n < steps; ++n) s = stepper.step(s);
    const double err = max_diff(s.u, std::exp(-I * 0.5 * 0.8) * u0);
    if (previous > 0.0) CHECK(std::log2(previous / err) > 3.8);
    previous = err;
  }
}

TEST_CASE("RK4 per-step charge error shrinks at order >= 4") {
  const Grid g = make_grid(16, kTwoPi);
  const auto u0 = packet(g);
  Model m;
  const auto s0 = make_state(u0, m);
  std::vector<double> errs;
  for (double dt : {0.04, 0.02}) {
    const auto s1 = step(s0, dt);
    errs.push_back(std::abs(charge(s1) - s0.Q0) / s0.Q0);
  }
  MESSAGE("per-step charge errors " << errs[0] << " " << errs[1]);
  CHECK(errs[1] > 0.0);
  CHECK(std::log2(errs[0] / errs[1]) >= 4.0);
}

TEST_CASE("regularized step dissipates energy and keeps charge") {
  const Grid g = make_grid(16, kTwoPi);
  Model m;
  m.epsilon = 0.05;
  auto s = make_state(packet(g), m);
  const double dt = 5e-3;
  const Stepper stepper(g, dt, m.epsilon, {});
  for (int n = 0; n < 5; ++n) {
    const auto next = stepper.step(s);
    CHECK(energy(next) < energy(s));
    CHECK(std::abs(charge(next) - s.Q0) <= 1e-8 * s.Q0);
    s = next;
  }
}

TEST_CASE("RK4 and semigroup steps agree on coupled data") {
  const Grid g = make_grid(16, kTwoPi);
  for (Gauge gauge : {Gauge::darwin, Gauge::poisswell}) {
    Model m;
    m.gauge = gauge;
    m.epsilon = 0.1;
    const auto s0 = make_state(packet(g), m);
    StepOptions sg;
    sg.scheme = Scheme::semigroup_picard;
    const double dt = 5e-3;
    auto a = s0, b = s0;
    const Stepper rk(g, dt, m.epsilon, {});
    const Stepper ex(g, dt, m.epsilon, sg);
    for (int n = 0; n < 10; ++n) {
      a = rk.step(a);
      b = ex.step(b);
    }
    CHECK(ex.last_picard_iterations() >= 1);
    CHECK(std::sqrt(norm_squared(a.u - b.u)) <= 1e-7);
  }
}

TEST_CASE("Picard iteration budget is enforced") {
  const Grid g = make_grid(16, kTwoPi);
  Model m;
  const auto s0 = make_state(packet(g), m);
  StepOptions sg;
  sg.scheme = Scheme::semigroup_picard;
  sg.picard_max_iterations = 1;
  sg.picard_tol = 1e-15;
  CHECK_THROWS_AS(step(s0, 0.05, sg), PicardNonConvergence);
}

TEST_CASE("evolve with zero time span returns the initial state only") {
  const Grid g = make_grid(8, kTwoPi);
  EvolveOptions opts;
  opts.T = 0.0;
  opts.keep_states = true;
  const auto traj = evolve(packet(g), Model{}, opts);
  REQUIRE(traj.records.size() == 1);
  CHECK(traj.steps == 0);
  CHECK(traj.records[0].t == 0.0);
  CHECK(traj.states.size() == 1);
}

TEST_CASE("evolve records on the stride and at the end") {
  const Grid g = make_grid(8, kTwoPi);
  EvolveOptions opts;
  opts.dt = 0.01;
  opts.T = 0.07;
  opts.stride = 3;
  int callbacks = 0;
  opts.on_record = [&](const SimState&, const DiagnosticsRecord&) { ++callbacks; };
  const auto traj = evolve(packet(g), Model{}, opts);
  REQUIRE(traj.records.size() == 4);  // steps 0, 3, 6, 7
  CHECK(callbacks == 4);
  CHECK(traj.records[1].t == doctest::Approx(0.03).epsilon(1e-15));
  CHECK(traj.records.back().t == doctest::Approx(0.07).epsilon(1e-15));
  CHECK(traj.steps == 7);
}

TEST_CASE("evolve rejects bad input and trips the blow-up guard") {
  const Grid g = make_grid(8, kTwoPi);
  EvolveOptions opts;
  opts.T = 0.01;
  CHECK_THROWS_AS(evolve(SpinorField(g), Model{}, opts), std::invalid_argument);
  opts.stride = 0;
  CHECK_THROWS_AS(evolve(packet(g), Model{}, opts), std::invalid_argument);

  EvolveOptions guarded;
  guarded.dt = 0.01;
  guarded.T = 0.05;
  guarded.blowup_guard = 1e-3;
  Trajectory traj;
  CHECK_THROWS_AS(evolve(packet(g), Model{}, guarded, traj), BlowUpGuardTriggered);
  CHECK(traj.records.size() == 2);
  CHECK(traj.steps == 1);
}

TEST_CASE("epsilon sweep: identical epsilons give identical paths") {
  const Grid g = make_grid(8, kTwoPi);
  EvolveOptions opts;
  opts.dt = 0.01;
  opts.T = 0.05;
  opts.stride = 1;
  const auto result = epsilon_sweep(packet(g), Model{}, {0.1, 0.1, 0.05}, opts);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].deviation <= 1e-12);
  CHECK(result.rows[1].deviation > 0.0);
  CHECK_THROWS_AS(epsilon_sweep(packet(g), Model{}, {0.1, 0.2, 0.05}, opts), std::invalid_argument);
}

TEST_CASE("loglog slope") {
  CHECK(loglog_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(loglog_slope({1}, {1}), std::invalid_argument);
}
