#include "pauli/magnetic.hpp"

#include "pauli/fft.hpp"
#include "pauli/spectral.hpp"
#include "pauli/spinor.hpp"

namespace pauli {
namespace {

const cplx kI{0.0, 1.0};

// u - i A_k u for one axis, added into out.
void add_minus_i_a_times(const RealArray& a, const SpinorField& u, SpinorField& out) {
  for (std::size_t p = 0; p < a.size(); ++p) {
    out.u1[p] -= kI * a[p] * u.u1[p];
    out.u2[p] -= kI * a[p] * u.u2[p];
  }
}

}  // namespace

SpinorTriple spinor_gradient(const SpinorField& u) {
  const Grid& g = u.grid;
  SpinorTriple out{SpinorField(g), SpinorField(g), SpinorField(g)};
  ComplexArray tmp(g.size());
  for (int c = 0; c < 2; ++c) {
    const auto s = fft::forward(g, u[c]);
    for (int a = 0; a < 3; ++a) {
      spectral::for_each_mode(g, [&](std::size_t idx, int i, int j, int k) {
        const int m = a == 0 ? i : (a == 1 ? j : k);
        tmp[idx] = kI * g.derivative_wavenumber(m) * s[idx];
      });
      fft::inverse(g, tmp, out[a][c]);
    }
  }
  return out;
}

SpinorTriple magnetic_gradient(const SpinorField& u, const VectorField& A) {
  require_same_grid(u.grid, A.grid);
  auto out = spinor_gradient(u);
  for (int a = 0; a < 3; ++a) add_minus_i_a_times(A[a], u, out[a]);
  return out;
}

SpinorField magnetic_laplacian(const SpinorField& u, const VectorField& A) {
  require_same_grid(u.grid, A.grid);
  const auto first = magnetic_gradient(u, A);
  SpinorField out(u.grid);
  for (int a = 0; a < 3; ++a) {
    const auto second = magnetic_gradient(first[a], A);
    out += second[a];
  }
  return out;
}

SpinorField magnetic_laplacian_expanded(const SpinorField& u, const VectorField& A) {
  require_same_grid(u.grid, A.grid);
  const Grid& g = u.grid;
  SpinorField out(g);
  out.u1 = laplacian(g, u.u1);
  out.u2 = laplacian(g, u.u2);
  const auto grad = spinor_gradient(u);
  const ScalarField divA = divergence(A);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double a2 = A[0][p] * A[0][p] + A[1][p] * A[1][p] + A[2][p] * A[2][p];
    for (int c = 0; c < 2; ++c) {
      const cplx adotgrad = A[0][p] * grad[0][c][p] + A[1][p] * grad[1][c][p] + A[2][p] * grad[2][c][p];
      out[c][p] += -2.0 * kI * adotgrad - kI * divA[p] * u[c][p] - a2 * u[c][p];
    }
  }
  return out;
}

SpinorField sigma_gradient(const SpinorField& u) {
  const Grid& g = u.grid;
  const auto s1 = fft::forward(g, u.u1);
  const auto s2 = fft::forward(g, u.u2);
  ComplexArray t1(g.size()), t2(g.size());
  spectral::for_each_mode(g, [&](std::size_t idx, int i, int j, int k) {
    const double kx = g.derivative_wavenumber(i);
    const double ky = g.derivative_wavenumber(j);
    const double kz = g.derivative_wavenumber(k);
    // i * [[kz, kx - i ky], [kx + i ky, -kz]]
    t1[idx] = kI * (kz * s1[idx] + cplx{kx, -ky} * s2[idx]);
    t2[idx] = kI * (cplx{kx, ky} * s1[idx] - kz * s2[idx]);
  });
  SpinorField out(g);
  fft::inverse(g, t1, out.u1);
  fft::inverse(g, t2, out.u2);
  return out;
}

SpinorField pauli_operator(const SpinorField& u, const VectorField& A) {
  require_same_grid(u.grid, A.grid);
  SpinorField out = sigma_gradient(u);
  out.axpy(-kI, sigma_dot(A, u));
  return out;
}

SpinorField spin_magnetic_laplacian(const SpinorField& u, const VectorField& A, SpinLaplacianMode mode) {
  if (mode == SpinLaplacianMode::direct) return pauli_operator(pauli_operator(u, A), A);
  SpinorField out = magnetic_laplacian_expanded(u, A);
  out += sigma_dot(curl(A), u);
  return out;
}

VectorField current_density(const SpinorField& u, const VectorField& A, CurrentForm form) {
  require_same_grid(u.grid, A.grid);
  VectorField J = current_source(u, form);
  const ScalarField rho = charge_density(u);
  for (int a = 0; a < 3; ++a)
    for (std::size_t p = 0; p < rho.values.size(); ++p) J[a][p] -= rho[p] * A[a][p];
  return J;
}

VectorField current_source(const SpinorField& u, CurrentForm form) {
  const Grid& g = u.grid;
  VectorField J(g);
  if (form == CurrentForm::sigma) {
    const SpinorField w = sigma_gradient(u);
    for (int a = 0; a < 3; ++a) {
      const SpinorField su = apply_sigma(a + 1, u);
      for (std::size_t p = 0; p < g.size(); ++p) {
        J[a][p] = (std::conj(su.u1[p]) * w.u1[p] + std::conj(su.u2[p]) * w.u2[p]).imag();
      }
    }
    return J;
  }
  const auto grad = spinor_gradient(u);
  const VectorField spin_curl = curl(spin_density(u));
  for (int a = 0; a < 3; ++a) {
    for (std::size_t p = 0; p < g.size(); ++p) {
      const cplx orbital = std::conj(u.u1[p]) * grad[a].u1[p] + std::conj(u.u2[p]) * grad[a].u2[p];
      J[a][p] = orbital.imag() + 0.5 * spin_curl[a][p];
    }
  }
  return J;
}

}  // namespace pauli
