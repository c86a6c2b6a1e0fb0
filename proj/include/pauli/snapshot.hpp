#pragma once

// PWF1 binary field snapshots.
//
// Layout (little-endian): "PWF1", u32 n, f64 box_length, u32 component_count,
// u32 complex_flag, then component-major data in grid order. Complex values
// are stored as interleaved (re, im) f64 pairs.

#include <filesystem>
#include <vector>

#include "pauli/fields.hpp"

namespace pauli {

struct Snapshot {
  int n = 0;
  double box_length = 0.0;
  bool complex_values = false;
  /// Filled when complex_values is false.
  std::vector<RealArray> real_components;
  /// Filled when complex_values is true.
  std::vector<ComplexArray> complex_components;

  int component_count() const {
    return static_cast<int>(complex_values ? complex_components.size() : real_components.size());
  }
};

void write_snapshot(const std::filesystem::path& path, const SpinorField& u);
void write_snapshot(const std::filesystem::path& path, const VectorField& v);
void write_snapshot(const std::filesystem::path& path, const ScalarField& f);

/// Throws SnapshotError on malformed or truncated files.
Snapshot read_snapshot(const std::filesystem::path& path);

/// Reads a spinor snapshot (complex, two components).
SpinorField read_spinor(const std::filesystem::path& path);

}  // namespace pauli
