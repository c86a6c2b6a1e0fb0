#include "pauli/spinor.hpp"

#include <stdexcept>

namespace pauli {
namespace {

const std::array<Mat2, 3> kPauli{{
    Mat2{{{cplx{0, 0}, cplx{1, 0}}, {cplx{1, 0}, cplx{0, 0}}}},
    Mat2{{{cplx{0, 0}, cplx{0, -1}}, {cplx{0, 1}, cplx{0, 0}}}},
    Mat2{{{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{-1, 0}}}},
}};

SpinorField apply_constant(const Mat2& m, const SpinorField& u) {
  SpinorField out(u.grid);
  for (std::size_t p = 0; p < u.u1.size(); ++p) {
    out.u1[p] = m[0][0] * u.u1[p] + m[0][1] * u.u2[p];
    out.u2[p] = m[1][0] * u.u1[p] + m[1][1] * u.u2[p];
  }
  return out;
}

}  // namespace

const Mat2& pauli_matrix(int index) {
  if (index < 1 || index > 3) throw std::out_of_range("pauli_matrix: index must be 1, 2 or 3");
  return kPauli[index - 1];
}

Mat2 matmul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Mat2 sigma_dot_matrix(const std::array<cplx, 3>& v) {
  Mat2 m{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] += v[k] * kPauli[k][i][j];
  return m;
}

SpinorField sigma_dot(const VectorField& v, const SpinorField& u) {
  require_same_grid(v.grid, u.grid);
  SpinorField out(u.grid);
  const auto& vx = v[0];
  const auto& vy = v[1];
  const auto& vz = v[2];
  for (std::size_t p = 0; p < u.u1.size(); ++p) {
    // [[vz, vx - i vy], [vx + i vy, -vz]]
    const cplx minus{vx[p], -vy[p]};
    const cplx plus{vx[p], vy[p]};
    out.u1[p] = vz[p] * u.u1[p] + minus * u.u2[p];
    out.u2[p] = plus * u.u1[p] - vz[p] * u.u2[p];
  }
  return out;
}

SpinorField sigma_dot(const std::array<cplx, 3>& v, const SpinorField& u) {
  return apply_constant(sigma_dot_matrix(v), u);
}

SpinorField sigma_dot(const std::array<double, 3>& v, const SpinorField& u) {
  return sigma_dot(std::array<cplx, 3>{v[0], v[1], v[2]}, u);
}

SpinorField apply_sigma(int index, const SpinorField& u) { return apply_constant(pauli_matrix(index), u); }

cplx inner_product(const SpinorField& v, const SpinorField& w) {
  require_same_grid(v.grid, w.grid);
  cplx acc{};
  for (std::size_t p = 0; p < v.u1.size(); ++p) acc += std::conj(v.u1[p]) * w.u1[p] + std::conj(v.u2[p]) * w.u2[p];
  return acc * v.grid.cell_volume();
}

double norm_squared(const SpinorField& u) {
  double acc = 0.0;
  for (std::size_t p = 0; p < u.u1.size(); ++p) acc += std::norm(u.u1[p]) + std::norm(u.u2[p]);
  return acc * u.grid.cell_volume();
}

ScalarField charge_density(const SpinorField& u) {
  ScalarField rho(u.grid);
  for (std::size_t p = 0; p < u.u1.size(); ++p) rho[p] = std::norm(u.u1[p]) + std::norm(u.u2[p]);
  return rho;
}

VectorField spin_density(const SpinorField& u) {
  // <u, sigma_1 u> = 2 Re(conj(u1) u2), <u, sigma_2 u> = 2 Im(conj(u1) u2),
  // <u, sigma_3 u> = |u1|^2 - |u2|^2; all exactly real.
  VectorField s(u.grid);
  for (std::size_t p = 0; p < u.u1.size(); ++p) {
    const cplx c = std::conj(u.u1[p]) * u.u2[p];
    s[0][p] = 2.0 * c.real();
    s[1][p] = 2.0 * c.imag();
    s[2][p] = std::norm(u.u1[p]) - std::norm(u.u2[p]);
  }
  return s;
}

}  // namespace pauli
