#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pauli/random_fields.hpp"
#include "pauli/spectral.hpp"
#include "pauli/spinor.hpp"
#include "support.hpp"

using namespace pauli;
using namespace pauli::test;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx I{0.0, 1.0};

double mat_diff(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m = std::max(m, std::abs(a[r][c] - b[r][c]));
  return m;
}

Mat2 scaled(cplx s, const Mat2& a) {
  Mat2 out = a;
  for (auto& row : out)
    for (auto& x : row) x *= s;
  return out;
}

}  // namespace

TEST_CASE("Pauli matrix entries") {
  const Mat2& s1 = pauli_matrix(1);
  const Mat2& s2 = pauli_matrix(2);
  const Mat2& s3 = pauli_matrix(3);
  CHECK(s1[0][1] == cplx(1, 0));
  CHECK(s1[1][0] == cplx(1, 0));
  CHECK(s2[0][1] == -I);
  CHECK(s2[1][0] == I);
  CHECK(s3[0][0] == cplx(1, 0));
  CHECK(s3[1][1] == cplx(-1, 0));
}

TEST_CASE("product laws sigma_j sigma_k = delta_jk + i eps_jkl sigma_l") {
  const Mat2 id{{{1.0, 0.0}, {0.0, 1.0}}};
  for (int j = 1; j <= 3; ++j) {
    CHECK(mat_diff(matmul(pauli_matrix(j), pauli_matrix(j)), id) == 0.0);
    const int k = j % 3 + 1;
    const int l = k % 3 + 1;
    CHECK(mat_diff(matmul(pauli_matrix(j), pauli_matrix(k)), scaled(I, pauli_matrix(l))) == 0.0);
    CHECK(mat_diff(matmul(pauli_matrix(k), pauli_matrix(j)), scaled(-I, pauli_matrix(l))) == 0.0);
  }
}

TEST_CASE("sigma_dot on constant spinors") {
  const Grid g = make_grid(4, kTwoPi);
  const auto up = constant_spinor(g, 1.0, 0.0);
  const auto down = constant_spinor(g, 0.0, 1.0);
  CHECK(max_diff(sigma_dot(std::array<double, 3>{0, 0, 1}, up), up) == 0.0);
  CHECK(max_diff(sigma_dot(std::array<double, 3>{1, 0, 0}, up), down) == 0.0);
  CHECK(max_diff(sigma_dot(constant_vector(g, 1, 0, 0), up), down) == 0.0);
}

TEST_CASE("sigma_dot squares to |v|^2 for real v") {
  const Grid g = make_grid(8, 1.0);
  Rng rng(21);
  const auto u = random_spinor(g, rng);
  const std::array<double, 3> v{0.3, -1.7, 2.2};
  const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const auto twice = sigma_dot(v, sigma_dot(v, u));
  CHECK(max_diff(twice, cplx(v2) * u) <= 1e-13 * v2 * max_abs(u));

  // Pointwise field version against the same law.
  const auto V = random_vector(g, rng);
  const auto VV = sigma_dot(V, sigma_dot(V, u));
  ScalarField mod2(g);
  for (std::size_t p = 0; p < g.size(); ++p) mod2[p] = V[0][p] * V[0][p] + V[1][p] * V[1][p] + V[2][p] * V[2][p];
  CHECK(max_diff(VV, multiply(mod2, u)) <= 1e-13 * max_abs(VV));
}

TEST_CASE("inner product examples") {
  const Grid g = make_grid(8, kTwoPi);
  const auto a = constant_spinor(g, 1.0, 0.0);
  const auto b = constant_spinor(g, 0.0, 1.0);
  CHECK(inner_product(a, a).real() == doctest::Approx(std::pow(kTwoPi, 3)).epsilon(1e-14));
  CHECK(std::abs(inner_product(a, b)) == 0.0);

  Rng rng(2);
  const auto v = random_spinor(g, rng);
  const auto w = random_spinor(g, rng);
  const cplx vw = inner_product(v, w);
  CHECK(std::abs(vw - std::conj(inner_product(w, v))) <= 1e-13 * std::abs(vw));
  // antilinear in the first slot
  CHECK(std::abs(inner_product(I * v, w) + I * vw) <= 1e-13 * std::abs(vw));
}

TEST_CASE("charge density") {
  const Grid g = make_grid(8, kTwoPi);
  for (auto [a, b] : {std::pair<cplx, cplx>{1.0, 0.0}, std::pair<cplx, cplx>{0.6, 0.8 * I}}) {
    const auto rho = charge_density(constant_spinor(g, a, b));
    for (double x : rho.values) CHECK(x == doctest::Approx(1.0).epsilon(1e-15));
  }
  Rng rng(4);
  const auto u = random_spinor(g, rng);
  CHECK(integral(charge_density(u)) == doctest::Approx(inner_product(u, u).real()).epsilon(1e-12));
  CHECK(norm_squared(u) == doctest::Approx(inner_product(u, u).real()).epsilon(1e-13));
}

TEST_CASE("spin density") {
  const Grid g = make_grid(4, kTwoPi);
  const auto s_up = spin_density(constant_spinor(g, 1.0, 0.0));
  CHECK(max_diff(s_up, constant_vector(g, 0, 0, 1)) < 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  const auto s_x = spin_density(constant_spinor(g, r, r));
  CHECK(max_diff(s_x, constant_vector(g, 1, 0, 0)) < 1e-15);
  const auto s_y = spin_density(constant_spinor(g, r, r * I));
  CHECK(max_diff(s_y, constant_vector(g, 0, 1, 0)) < 1e-15);
}

TEST_CASE("spin density is bounded by charge density pointwise") {
  const Grid g = make_grid(16, 2.0);
  Rng rng(6);
  const auto u = random_spinor(g, rng);
  const auto s = spin_density(u);
  const auto rho = charge_density(u);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double m = std::sqrt(s[0][p] * s[0][p] + s[1][p] * s[1][p] + s[2][p] * s[2][p]);
    CHECK(m <= rho[p] + 1e-13);
    // Pure spinors saturate the bound.
    CHECK(m == doctest::Approx(rho[p]).epsilon(1e-12));
  }
}

TEST_CASE("apply_sigma agrees with sigma_dot on unit vectors") {
  const Grid g = make_grid(8, 1.0);
  Rng rng(8);
  const auto u = random_spinor(g, rng);
  for (int k = 1; k <= 3; ++k) {
    std::array<double, 3> e{0, 0, 0};
    e[k - 1] = 1.0;
    CHECK(max_diff(apply_sigma(k, u), sigma_dot(e, u)) == 0.0);
  }
}
