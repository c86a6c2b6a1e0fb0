#pragma once

// Fourier multipliers on the periodic grid.
//
// Conventions:
//  * first derivatives use i*k with the Nyquist wavenumber zeroed, so real
//    fields stay real;
//  * the Laplacian uses the full symbol -|k|^2;
//  * the Leray projector uses the derivative wavenumbers, which makes the
//    spectral divergence of its output vanish identically;
//  * norms are quadrature norms with weight spacing^3.

#include <array>
#include <span>
#include <vector>

#include "pauli/fields.hpp"

namespace pauli {

ScalarField derivative(const ScalarField& f, Axis axis);
ComplexArray derivative(const Grid& g, std::span<const cplx> f, Axis axis);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);

ScalarField laplacian(const ScalarField& f);
ComplexArray laplacian(const Grid& g, std::span<const cplx> f);

/// g with -Laplacian(g) = f - mean(f) and mean(g) = 0.
ScalarField inv_neg_laplacian(const ScalarField& f);
VectorField inv_neg_laplacian(const VectorField& v);

/// Projection onto divergence-free fields; the mean passes through unchanged.
VectorField leray_project(const VectorField& v);

/// || <D>^s f ||_{L^2}, or || |D|^s f ||_{L^2} (zero mode excluded) when
/// homogeneous is set.
double sobolev_norm(const ScalarField& f, double s, bool homogeneous = false);
double sobolev_norm(const SpinorField& u, double s, bool homogeneous = false);

/// sum_k |k|^2 |f_k|^2 with quadrature normalization, i.e. ||grad f||^2 in
/// the L^2 sense, consistent with the Laplacian symbol.
double gradient_norm_squared(const ScalarField& f);
double gradient_norm_squared(const VectorField& v);
double gradient_norm_squared(const SpinorField& u);

/// Two-thirds rule: zero every mode with |m_axis| > n/3 on any axis.
bool inside_dealias_band(const Grid& g, int i, int j, int k);
void dealias(ScalarField& f);
void dealias(VectorField& v);
void dealias(SpinorField& u);

double integral(const ScalarField& f);
double mean(const ScalarField& f);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
/// Real L^2 pairing of two scalar fields.
double l2_inner(const ScalarField& a, const ScalarField& b);

namespace spectral {

// Half-spectrum (real-to-complex layout) building blocks used by the solvers.
using HalfSpectrum = ComplexArray;

HalfSpectrum forward(const ScalarField& f);
HalfSpectrum forward(const Grid& g, std::span<const double> f);
RealArray inverse(const Grid& g, const HalfSpectrum& s);

/// Visits every stored mode of a half spectrum with (index, kx, ky, kz) using
/// full wavenumbers. Defined inline for the hot loops.
template <class F>
void for_each_half_mode(const Grid& g, F&& f) {
  const int n = g.n;
  const int nh = n / 2 + 1;
  std::size_t idx = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < nh; ++i, ++idx) f(idx, i, j, k);
}

template <class F>
void for_each_mode(const Grid& g, F&& f) {
  const int n = g.n;
  std::size_t idx = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i, ++idx) f(idx, i, j, k);
}

/// Multiplicity of a half-spectrum x-index in Parseval sums (1 or 2).
inline double half_weight(const Grid& g, int i) { return (i == 0 || 2 * i == g.n) ? 1.0 : 2.0; }

void inv_neg_laplacian_inplace(const Grid& g, HalfSpectrum& s);
void leray_inplace(const Grid& g, std::array<HalfSpectrum, 3>& s);
void remove_mean_inplace(HalfSpectrum& s);
/// Quadrature L^2 norm squared of the real field represented by s.
double norm_squared(const Grid& g, const HalfSpectrum& s);
/// Quadrature sum of |k|^2 |s_k|^2.
double gradient_norm_squared(const Grid& g, const HalfSpectrum& s);

}  // namespace spectral
}  // namespace pauli
