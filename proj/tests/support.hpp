#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include "pauli/fields.hpp"
#include "pauli/spinor.hpp"

namespace pauli::test {

inline ScalarField sample(const Grid& g, const std::function<double(double, double, double)>& f) {
  ScalarField out(g);
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) out[g.index(i, j, k)] = f(g.coordinate(i), g.coordinate(j), g.coordinate(k));
  return out;
}

inline SpinorField sample_spinor(const Grid& g, const std::function<cplx(double, double, double)>& f1,
                                 const std::function<cplx(double, double, double)>& f2) {
  SpinorField out(g);
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.coordinate(i), y = g.coordinate(j), z = g.coordinate(k);
        out.u1[g.index(i, j, k)] = f1(x, y, z);
        out.u2[g.index(i, j, k)] = f2(x, y, z);
      }
  return out;
}

inline SpinorField constant_spinor(const Grid& g, cplx a, cplx b) {
  return sample_spinor(g, [a](double, double, double) { return a; }, [b](double, double, double) { return b; });
}

inline VectorField constant_vector(const Grid& g, double ax, double ay, double az) {
  VectorField v(g);
  std::fill(v[0].begin(), v[0].end(), ax);
  std::fill(v[1].begin(), v[1].end(), ay);
  std::fill(v[2].begin(), v[2].end(), az);
  return v;
}

template <class Array>
double max_abs(const Array& a) {
  double m = 0.0;
  for (const auto& x : a) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

template <class Array>
double max_diff(const Array& a, const Array& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, static_cast<double>(std::abs(a[i] - b[i])));
  return m;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) { return max_diff(a.values, b.values); }

inline double max_diff(const VectorField& a, const VectorField& b) {
  return std::max({max_diff(a[0], b[0]), max_diff(a[1], b[1]), max_diff(a[2], b[2])});
}

inline double max_diff(const SpinorField& a, const SpinorField& b) {
  return std::max(max_diff(a.u1, b.u1), max_diff(a.u2, b.u2));
}

inline double max_abs(const SpinorField& u) { return std::max(max_abs(u.u1), max_abs(u.u2)); }
inline double max_abs(const VectorField& v) { return std::max({max_abs(v[0]), max_abs(v[1]), max_abs(v[2])}); }

/// Periodized Gaussian exp(-r^2 / (2 w^2)) about the box center with momentum
/// along x and spin (1, i) / sqrt 2, normalized to unit charge. Widths of
/// about 1.2 on a 2 pi box are resolved by n = 16 inside the dealiasing band.
inline SpinorField packet(const Grid& g, double width = 1.2) {
  const double c = g.box_length / 2;
  const double L = g.box_length;
  auto profile = [=](double x, double y, double z) {
    double acc = 0.0;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int d = -1; d <= 1; ++d) {
          const double dx = x - c + a * L, dy = y - c + b * L, dz = z - c + d * L;
          acc += std::exp(-(dx * dx + dy * dy + dz * dz) / (2 * width * width));
        }
    return acc;
  };
  const cplx i{0.0, 1.0};
  auto u = sample_spinor(
      g, [=](double x, double y, double z) { return profile(x, y, z) * std::exp(i * x); },
      [=](double x, double y, double z) { return i * profile(x, y, z) * std::exp(i * x); });
  u *= 1.0 / std::sqrt(norm_squared(u));
  return u;
}

/// L^2 distance relative to the L^2 norm of b.
inline double rel_l2(const SpinorField& a, const SpinorField& b) {
  return std::sqrt(norm_squared(a - b) / norm_squared(b));
}

}  // namespace pauli::test
