#include "pauli/spectral.hpp"

#include <cmath>
#include <numeric>

#include "pauli/errors.hpp"
#include "pauli/fft.hpp"

namespace pauli {

using spectral::for_each_half_mode;
using spectral::for_each_mode;
using spectral::HalfSpectrum;

namespace {

const cplx kI{0.0, 1.0};

double kd(const Grid& g, int idx) { return g.derivative_wavenumber(idx); }

double k_squared(const Grid& g, int i, int j, int k) {
  const auto& w = g.wavenumbers;
  return w[i] * w[i] + w[j] * w[j] + w[k] * w[k];
}

// Derivative wavenumber along an axis for mode (i, j, k).
double kd_axis(const Grid& g, Axis a, int i, int j, int k) {
  switch (a) {
    case Axis::x: return kd(g, i);
    case Axis::y: return kd(g, j);
    default: return kd(g, k);
  }
}

}  // namespace

namespace spectral {

HalfSpectrum forward(const ScalarField& f) { return fft::forward_real(f.grid, f.values); }
HalfSpectrum forward(const Grid& g, std::span<const double> f) { return fft::forward_real(g, f); }
RealArray inverse(const Grid& g, const HalfSpectrum& s) { return fft::inverse_real(g, s); }

void inv_neg_laplacian_inplace(const Grid& g, HalfSpectrum& s) {
  for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) {
    const double k2 = k_squared(g, i, j, k);
    s[idx] = k2 > 0.0 ? s[idx] / k2 : cplx{};
  });
}

void leray_inplace(const Grid& g, std::array<HalfSpectrum, 3>& s) {
  for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) {
    const double q[3] = {kd(g, i), kd(g, j), kd(g, k)};
    const double q2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    if (q2 == 0.0) return;
    const cplx dot = (q[0] * s[0][idx] + q[1] * s[1][idx] + q[2] * s[2][idx]) / q2;
    for (int c = 0; c < 3; ++c) s[c][idx] -= q[c] * dot;
  });
}

void remove_mean_inplace(HalfSpectrum& s) { s[0] = 0.0; }

double norm_squared(const Grid& g, const HalfSpectrum& s) {
  double acc = 0.0;
  for_each_half_mode(g, [&](std::size_t idx, int i, int, int) { acc += half_weight(g, i) * std::norm(s[idx]); });
  return acc * g.cell_volume() / static_cast<double>(g.size());
}

double gradient_norm_squared(const Grid& g, const HalfSpectrum& s) {
  double acc = 0.0;
  for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) {
    acc += half_weight(g, i) * k_squared(g, i, j, k) * std::norm(s[idx]);
  });
  return acc * g.cell_volume() / static_cast<double>(g.size());
}

}  // namespace spectral

ScalarField derivative(const ScalarField& f, Axis axis) {
  const Grid& g = f.grid;
  auto s = spectral::forward(f);
  for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) { s[idx] *= kI * kd_axis(g, axis, i, j, k); });
  return ScalarField(g, spectral::inverse(g, s));
}

ComplexArray derivative(const Grid& g, std::span<const cplx> f, Axis axis) {
  auto s = fft::forward(g, f);
  for_each_mode(g, [&](std::size_t idx, int i, int j, int k) { s[idx] *= kI * kd_axis(g, axis, i, j, k); });
  return fft::inverse(g, s);
}

VectorField gradient(const ScalarField& f) {
  const Grid& g = f.grid;
  const auto s = spectral::forward(f);
  VectorField out(g);
  for (Axis a : kAxes) {
    HalfSpectrum d(s.size());
    for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) { d[idx] = kI * kd_axis(g, a, i, j, k) * s[idx]; });
    out[a] = spectral::inverse(g, d);
  }
  return out;
}

ScalarField divergence(const VectorField& v) {
  const Grid& g = v.grid;
  HalfSpectrum acc(fft::half_size(g));
  for (Axis a : kAxes) {
    const auto s = spectral::forward(g, v[a]);
    for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) { acc[idx] += kI * kd_axis(g, a, i, j, k) * s[idx]; });
  }
  return ScalarField(g, spectral::inverse(g, acc));
}

VectorField curl(const VectorField& v) {
  const Grid& g = v.grid;
  std::array<HalfSpectrum, 3> s{spectral::forward(g, v[0]), spectral::forward(g, v[1]), spectral::forward(g, v[2])};
  std::array<HalfSpectrum, 3> c;
  for (auto& x : c) x.assign(s[0].size(), cplx{});
  for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) {
    const double q[3] = {kd(g, i), kd(g, j), kd(g, k)};
    c[0][idx] = kI * (q[1] * s[2][idx] - q[2] * s[1][idx]);
    c[1][idx] = kI * (q[2] * s[0][idx] - q[0] * s[2][idx]);
    c[2][idx] = kI * (q[0] * s[1][idx] - q[1] * s[0][idx]);
  });
  VectorField out(g);
  for (int a = 0; a < 3; ++a) out[a] = spectral::inverse(g, c[a]);
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid;
  auto s = spectral::forward(f);
  for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) { s[idx] *= -k_squared(g, i, j, k); });
  return ScalarField(g, spectral::inverse(g, s));
}

ComplexArray laplacian(const Grid& g, std::span<const cplx> f) {
  auto s = fft::forward(g, f);
  for_each_mode(g, [&](std::size_t idx, int i, int j, int k) { s[idx] *= -k_squared(g, i, j, k); });
  return fft::inverse(g, s);
}

ScalarField inv_neg_laplacian(const ScalarField& f) {
  auto s = spectral::forward(f);
  spectral::inv_neg_laplacian_inplace(f.grid, s);
  return ScalarField(f.grid, spectral::inverse(f.grid, s));
}

VectorField inv_neg_laplacian(const VectorField& v) {
  VectorField out(v.grid);
  for (int a = 0; a < 3; ++a) {
    auto s = spectral::forward(v.grid, v[a]);
    spectral::inv_neg_laplacian_inplace(v.grid, s);
    out[a] = spectral::inverse(v.grid, s);
  }
  return out;
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid;
  std::array<HalfSpectrum, 3> s{spectral::forward(g, v[0]), spectral::forward(g, v[1]), spectral::forward(g, v[2])};
  spectral::leray_inplace(g, s);
  VectorField out(g);
  for (int a = 0; a < 3; ++a) out[a] = spectral::inverse(g, s[a]);
  return out;
}

namespace {

double sobolev_weight(double k2, double s, bool homogeneous) {
  if (homogeneous) return k2 > 0.0 ? std::pow(k2, s) : 0.0;
  return std::pow(1.0 + k2, s);
}

}  // namespace

double sobolev_norm(const ScalarField& f, double s, bool homogeneous) {
  const Grid& g = f.grid;
  const auto spec = spectral::forward(f);
  double acc = 0.0;
  for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) {
    acc += spectral::half_weight(g, i) * sobolev_weight(k_squared(g, i, j, k), s, homogeneous) * std::norm(spec[idx]);
  });
  return std::sqrt(acc * g.cell_volume() / static_cast<double>(g.size()));
}

double sobolev_norm(const SpinorField& u, double s, bool homogeneous) {
  const Grid& g = u.grid;
  double acc = 0.0;
  for (int c = 0; c < 2; ++c) {
    const auto spec = fft::forward(g, u[c]);
    for_each_mode(g, [&](std::size_t idx, int i, int j, int k) {
      acc += sobolev_weight(k_squared(g, i, j, k), s, homogeneous) * std::norm(spec[idx]);
    });
  }
  return std::sqrt(acc * g.cell_volume() / static_cast<double>(g.size()));
}

double gradient_norm_squared(const ScalarField& f) { return spectral::gradient_norm_squared(f.grid, spectral::forward(f)); }

double gradient_norm_squared(const VectorField& v) {
  double acc = 0.0;
  for (int a = 0; a < 3; ++a) acc += spectral::gradient_norm_squared(v.grid, spectral::forward(v.grid, v[a]));
  return acc;
}

double gradient_norm_squared(const SpinorField& u) {
  const double h1 = sobolev_norm(u, 1.0, true);
  return h1 * h1;
}

bool inside_dealias_band(const Grid& g, int i, int j, int k) {
  const int cut = g.n / 3;
  auto m = [&](int idx) { return std::abs(idx < g.n / 2 ? idx : idx - g.n); };
  return m(i) <= cut && m(j) <= cut && m(k) <= cut;
}

void dealias(ScalarField& f) {
  const Grid& g = f.grid;
  auto s = spectral::forward(f);
  for_each_half_mode(g, [&](std::size_t idx, int i, int j, int k) {
    if (!inside_dealias_band(g, i, j, k)) s[idx] = 0.0;
  });
  f.values = spectral::inverse(g, s);
}

void dealias(VectorField& v) {
  for (int a = 0; a < 3; ++a) {
    ScalarField c(v.grid, std::move(v[a]));
    dealias(c);
    v[a] = std::move(c.values);
  }
}

void dealias(SpinorField& u) {
  const Grid& g = u.grid;
  for (int c = 0; c < 2; ++c) {
    auto s = fft::forward(g, u[c]);
    for_each_mode(g, [&](std::size_t idx, int i, int j, int k) {
      if (!inside_dealias_band(g, i, j, k)) s[idx] = 0.0;
    });
    fft::inverse(g, s, u[c]);
  }
}

double integral(const ScalarField& f) {
  return std::accumulate(f.values.begin(), f.values.end(), 0.0) * f.grid.cell_volume();
}

double mean(const ScalarField& f) { return integral(f) / f.grid.volume(); }

double l2_norm(const ScalarField& f) { return std::sqrt(l2_inner(f, f)); }

double l2_norm(const VectorField& v) {
  double acc = 0.0;
  for (const auto& c : v.components)
    for (double x : c) acc += x * x;
  return std::sqrt(acc * v.grid.cell_volume());
}

double l2_inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
  return acc * a.grid.cell_volume();
}

}  // namespace pauli
