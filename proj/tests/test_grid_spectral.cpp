#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pauli/errors.hpp"
#include "pauli/fft.hpp"
#include "pauli/random_fields.hpp"
#include "pauli/spectral.hpp"
#include "support.hpp"

using namespace pauli;
using namespace pauli::test;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("make_grid spacing and wavenumber ordering") {
  const Grid g = make_grid(8, kTwoPi);
  CHECK(g.spacing == doctest::Approx(kTwoPi / 8).epsilon(1e-15));
  CHECK(g.spacing * g.n == doctest::Approx(g.box_length).epsilon(1e-15));

  const Grid g4 = make_grid(4, kTwoPi);
  REQUIRE(g4.wavenumbers.size() == 4);
  CHECK(g4.wavenumbers[0] == 0.0);
  CHECK(g4.wavenumbers[1] == doctest::Approx(1.0));
  CHECK(g4.wavenumbers[2] == doctest::Approx(-2.0));
  CHECK(g4.wavenumbers[3] == doctest::Approx(-1.0));
  CHECK(std::count(g4.wavenumbers.begin(), g4.wavenumbers.end(), 0.0) == 1);
  CHECK(g4.derivative_wavenumber(2) == 0.0);
}

TEST_CASE("make_grid rejects invalid input") {
  CHECK_THROWS_AS(make_grid(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, -1.0), std::invalid_argument);
}

TEST_CASE("grid mismatch is reported") {
  const Grid a = make_grid(8, kTwoPi);
  const Grid b = make_grid(16, kTwoPi);
  CHECK_THROWS_AS(ScalarField(a) + ScalarField(b), GridMismatch);
}

TEST_CASE("fft round trips") {
  const Grid g = make_grid(16, 3.0);
  Rng rng(7);
  const auto u = random_spinor(g, rng, 7);
  const auto back = fft::inverse(g, fft::forward(g, u.u1));
  CHECK(max_diff(back, u.u1) < 1e-14);

  const auto f = random_scalar(g, rng, 7);
  const auto rback = fft::inverse_real(g, fft::forward_real(g, f.values));
  CHECK(max_diff(rback, f.values) < 1e-14);
}

TEST_CASE("half-spectrum Parseval matches the physical quadrature") {
  const Grid g = make_grid(12, 2.5);
  Rng rng(3);
  const auto f = random_scalar(g, rng);
  const double direct = l2_inner(f, f);
  const double spectral_norm = spectral::norm_squared(g, spectral::forward(f));
  CHECK(spectral_norm == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("derivative of Fourier modes and constants") {
  const Grid g = make_grid(16, kTwoPi);
  const auto s = sample(g, [](double x, double, double) { return std::sin(x); });
  const auto c = sample(g, [](double x, double, double) { return std::cos(x); });
  CHECK(max_diff(derivative(s, Axis::x), c) < 1e-14);
  CHECK(max_abs(derivative(s, Axis::y).values) < 1e-15);

  const auto k = sample(g, [](double, double, double) { return 4.2; });
  for (Axis a : kAxes) CHECK(max_abs(derivative(k, a).values) < 1e-14);
}

TEST_CASE("derivative agrees with fourth-order centered differences") {
  // Band-limited smooth field with a few low modes so the FD truncation error
  // is small. The error must fall by about 16 per halving of the spacing.
  auto field = [](double x, double y, double z) { return std::sin(x + 2 * y) * std::cos(z) + 0.3 * std::cos(3 * x - z); };
  auto exact_dx = [](double x, double y, double z) { return std::cos(x + 2 * y) * std::cos(z) - 0.9 * std::sin(3 * x - z); };
  double previous = 0.0;
  for (int n : {16, 32}) {
    const Grid g = make_grid(n, kTwoPi);
    const auto f = sample(g, field);
    const auto d = derivative(f, Axis::x);
    const double h = g.spacing;
    double fd_err = 0.0, spec_err = 0.0;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          auto at = [&](int di) { return f[g.index((i + di + n) % n, j, k)]; };
          const double fd = (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
          fd_err = std::max(fd_err, std::abs(fd - d[g.index(i, j, k)]));
          spec_err = std::max(spec_err, std::abs(d[g.index(i, j, k)] -
                                                 exact_dx(g.coordinate(i), g.coordinate(j), g.coordinate(k))));
        }
    CHECK(spec_err < 1e-13);
    CHECK(fd_err < 2.0 * std::pow(h, 4) * 81.0);  // |f^(5)| <= 3^5 * 0.3 + 1 < 81
    if (previous > 0.0) CHECK(previous / fd_err > 12.0);
    previous = fd_err;
  }
}

TEST_CASE("inverse negative Laplacian") {
  const Grid g = make_grid(16, kTwoPi);
  const auto c = sample(g, [](double x, double, double) { return std::cos(x); });
  CHECK(max_diff(inv_neg_laplacian(c), c) < 1e-14);

  const auto k = sample(g, [](double, double, double) { return -3.0; });
  CHECK(max_abs(inv_neg_laplacian(k).values) < 1e-15);

  Rng rng(11);
  auto f = random_scalar(g, rng, 7);
  const auto u = inv_neg_laplacian(f);
  const auto back = -1.0 * laplacian(u);
  const double m = mean(f);
  for (auto& x : f.values) x -= m;
  CHECK(l2_norm(back - f) <= 1e-12 * l2_norm(f));
  CHECK(std::abs(mean(u)) < 1e-14);
}

TEST_CASE("Leray projection annihilates gradients and fixes curls") {
  const Grid g = make_grid(16, 2.0);
  Rng rng(5);
  const auto phi = random_scalar(g, rng);
  const auto grad = gradient(phi);
  CHECK(l2_norm(leray_project(grad)) <= 1e-13 * l2_norm(grad));

  const auto W = random_vector(g, rng);
  const auto c = curl(W);
  CHECK(l2_norm(leray_project(c) - c) <= 1e-12 * l2_norm(c));

  const auto J = random_vector(g, rng, 7);
  const auto P = leray_project(J);
  CHECK(l2_norm(divergence(P)) <= 1e-12 * l2_norm(J));
  CHECK(l2_norm(leray_project(P) - P) <= 1e-13 * l2_norm(J));
}

TEST_CASE("Leray projection passes the mean through") {
  const Grid g = make_grid(8, kTwoPi);
  const auto v = constant_vector(g, 1.0, -2.0, 0.5);
  CHECK(max_diff(leray_project(v), v) < 1e-14);
}

TEST_CASE("sobolev norm examples") {
  const Grid g = make_grid(8, kTwoPi);
  const double L32 = std::pow(kTwoPi, 1.5);
  const auto c = sample(g, [](double, double, double) { return -2.0; });
  CHECK(sobolev_norm(c, 0.0) == doctest::Approx(2.0 * L32).epsilon(1e-13));
  CHECK(sobolev_norm(c, 1.0, true) == doctest::Approx(0.0));

  const auto wave = sample_spinor(
      g, [](double x, double, double) { return std::exp(cplx(0, x)); }, [](double, double, double) { return cplx{}; });
  CHECK(sobolev_norm(wave, 1.0) == doctest::Approx(std::sqrt(2.0) * L32).epsilon(1e-13));
  CHECK(sobolev_norm(wave, 1.0, true) == doctest::Approx(L32).epsilon(1e-13));
}

TEST_CASE("sobolev norm s = 2 matches assembly from derivatives") {
  const Grid g = make_grid(16, 3.0);
  Rng rng(9);
  const auto f = random_scalar(g, rng);
  const auto grad = gradient(f);
  const auto lap = laplacian(f);
  const double assembled = l2_inner(f, f) + 2.0 * std::pow(l2_norm(grad), 2) + l2_inner(lap, lap);
  const double hs = sobolev_norm(f, 2.0);
  CHECK(hs * hs == doctest::Approx(assembled).epsilon(1e-10));
  CHECK(gradient_norm_squared(f) == doctest::Approx(std::pow(l2_norm(grad), 2)).epsilon(1e-12));
}

TEST_CASE("dealias keeps the two-thirds band and is idempotent") {
  const Grid g = make_grid(12, kTwoPi);
  // |m| = 4 = n/3 survives, |m| = 5 is removed.
  auto kept = sample(g, [](double x, double, double z) { return std::cos(4 * x) * std::sin(4 * z); });
  auto cut = sample(g, [](double, double y, double) { return std::cos(5 * y); });
  const auto kept0 = kept;
  dealias(kept);
  dealias(cut);
  CHECK(max_diff(kept, kept0) < 1e-14);
  CHECK(max_abs(cut.values) < 1e-14);

  Rng rng(1);
  auto u = random_spinor(g, rng, 5);
  dealias(u);
  const auto once = u;
  dealias(u);
  CHECK(max_diff(u, once) < 1e-15);
}

TEST_CASE("integral and mean") {
  const Grid g = make_grid(8, 2.0);
  const auto f = sample(g, [](double x, double, double) { return 1.0 + std::sin(std::numbers::pi * x); });
  CHECK(integral(f) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(mean(f) == doctest::Approx(1.0).epsilon(1e-14));
}
