#include "pauli/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pauli/errors.hpp"

namespace pauli {

Grid make_grid(int n, double box_length) {
  if (n < 4) throw std::invalid_argument("grid: n must be >= 4, got " + std::to_string(n));
  if (n % 2 != 0) throw std::invalid_argument("grid: n must be even, got " + std::to_string(n));
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw std::invalid_argument("grid: box_length must be positive and finite");
  }
  Grid g;
  g.n = n;
  g.box_length = box_length;
  g.spacing = box_length / n;
  g.wavenumbers.resize(n);
  const double k0 = 2.0 * std::numbers::pi / box_length;
  for (int i = 0; i < n; ++i) g.wavenumbers[i] = k0 * (i < n / 2 ? i : i - n);
  return g;
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) {
    throw GridMismatch("grid mismatch: n=" + std::to_string(a.n) + " L=" + std::to_string(a.box_length) +
                       " vs n=" + std::to_string(b.n) + " L=" + std::to_string(b.box_length));
  }
}

ScalarField::ScalarField(const Grid& g, RealArray v) : grid(g), values(std::move(v)) {
  if (values.size() != g.size()) throw std::invalid_argument("ScalarField: value count does not match grid");
}

VectorField::VectorField(const Grid& g) : grid(g) {
  for (auto& c : components) c.assign(g.size(), 0.0);
}

SpinorField& SpinorField::operator+=(const SpinorField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t i = 0; i < u1.size(); ++i) {
    u1[i] += o.u1[i];
    u2[i] += o.u2[i];
  }
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t i = 0; i < u1.size(); ++i) {
    u1[i] -= o.u1[i];
    u2[i] -= o.u2[i];
  }
  return *this;
}

SpinorField& SpinorField::operator*=(cplx a) {
  for (auto& v : u1) v *= a;
  for (auto& v : u2) v *= a;
  return *this;
}

SpinorField& SpinorField::axpy(cplx a, const SpinorField& x) {
  require_same_grid(grid, x.grid);
  for (std::size_t i = 0; i < u1.size(); ++i) {
    u1[i] += a * x.u1[i];
    u2[i] += a * x.u2[i];
  }
  return *this;
}

SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
SpinorField operator*(cplx a, SpinorField u) { return u *= a; }

VectorField operator+(VectorField a, const VectorField& b) {
  require_same_grid(a.grid, b.grid);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a[c].size(); ++i) a[c][i] += b[c][i];
  return a;
}

VectorField operator-(VectorField a, const VectorField& b) {
  require_same_grid(a.grid, b.grid);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a[c].size(); ++i) a[c][i] -= b[c][i];
  return a;
}

VectorField operator*(double a, VectorField v) {
  for (auto& c : v.components)
    for (auto& x : c) x *= a;
  return v;
}

ScalarField operator+(ScalarField a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
  return a;
}

ScalarField operator-(ScalarField a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
  return a;
}

ScalarField operator*(double a, ScalarField f) {
  for (auto& x : f.values) x *= a;
  return f;
}

SpinorField multiply(const ScalarField& f, const SpinorField& u) {
  require_same_grid(f.grid, u.grid);
  SpinorField out(u.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    out.u1[i] = f.values[i] * u.u1[i];
    out.u2[i] = f.values[i] * u.u2[i];
  }
  return out;
}

bool all_finite(const ScalarField& f) {
  for (double x : f.values)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const VectorField& v) {
  for (const auto& c : v.components)
    for (double x : c)
      if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const SpinorField& u) {
  for (int c = 0; c < 2; ++c)
    for (const cplx& z : u[c])
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace pauli
