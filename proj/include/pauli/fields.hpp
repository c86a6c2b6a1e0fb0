#pragma once

// Periodic grid on the torus [0, L)^3 and the field containers living on it.
//
// Storage order is x-fastest: index(i, j, k) = i + n * (j + n * k), where
// i, j, k are the grid indices along x, y, z.

#include <array>
#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace pauli {

using cplx = std::complex<double>;

/// 64-byte aligned storage so FFTW can run its SIMD kernels in place.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlignment{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t count) { return static_cast<T*>(::operator new(count * sizeof(T), kAlignment)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlignment); }

  template <class U>
  friend bool operator==(const AlignedAllocator&, const AlignedAllocator<U>&) noexcept {
    return true;
  }
};

using RealArray = std::vector<double, AlignedAllocator<double>>;
using ComplexArray = std::vector<cplx, AlignedAllocator<cplx>>;

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

struct Grid {
  int n = 0;
  double box_length = 0.0;
  double spacing = 0.0;
  /// (2 pi / L) * {0, 1, ..., n/2 - 1, -n/2, ..., -1}
  std::vector<double> wavenumbers;

  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  double cell_volume() const { return spacing * spacing * spacing; }
  double volume() const { return box_length * box_length * box_length; }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * (j + static_cast<std::size_t>(n) * k);
  }
  double coordinate(int i) const { return i * spacing; }

  /// Wavenumber used by odd-order derivatives: the Nyquist entry is zeroed.
  double derivative_wavenumber(int i) const { return 2 * i == n ? 0.0 : wavenumbers[i]; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n == b.n && a.box_length == b.box_length;
  }
};

/// Throws std::invalid_argument for odd n, n < 4 or non-positive box length.
Grid make_grid(int n, double box_length);

/// Throws GridMismatch when the two grids differ.
void require_same_grid(const Grid& a, const Grid& b);

struct ScalarField {
  Grid grid;
  RealArray values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  ScalarField(const Grid& g, RealArray v);

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

struct VectorField {
  Grid grid;
  std::array<RealArray, 3> components;

  VectorField() = default;
  explicit VectorField(const Grid& g);

  RealArray& operator[](Axis a) { return components[static_cast<int>(a)]; }
  const RealArray& operator[](Axis a) const { return components[static_cast<int>(a)]; }
  RealArray& operator[](int a) { return components[a]; }
  const RealArray& operator[](int a) const { return components[a]; }

  ScalarField component(Axis a) const { return ScalarField(grid, (*this)[a]); }
};

/// Two-component complex field u = (u1, u2): the spin-up and spin-down parts.
struct SpinorField {
  Grid grid;
  ComplexArray u1;
  ComplexArray u2;

  SpinorField() = default;
  explicit SpinorField(const Grid& g) : grid(g), u1(g.size()), u2(g.size()) {}

  ComplexArray& operator[](int c) { return c == 0 ? u1 : u2; }
  const ComplexArray& operator[](int c) const { return c == 0 ? u1 : u2; }

  SpinorField& operator+=(const SpinorField& o);
  SpinorField& operator-=(const SpinorField& o);
  SpinorField& operator*=(cplx a);
  /// this += a * x
  SpinorField& axpy(cplx a, const SpinorField& x);
};

SpinorField operator+(SpinorField a, const SpinorField& b);
SpinorField operator-(SpinorField a, const SpinorField& b);
SpinorField operator*(cplx a, SpinorField u);

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double a, VectorField v);
ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField f);

/// Pointwise product f * u.
SpinorField multiply(const ScalarField& f, const SpinorField& u);

bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& v);
bool all_finite(const SpinorField& u);

}  // namespace pauli
