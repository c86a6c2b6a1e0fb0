#pragma once

#include "pauli/config.hpp"
#include "pauli/fields.hpp"

namespace pauli {

/// Builds u0 on the grid and rescales it to the requested L^2 norm.
///
/// gaussian_packet: spin * sum over periodic images of
///   exp(-|x - c|^2 / (2 w^2) + i k.(x - c)),
/// plane_wave: spin * exp(i k.x), file: a PWF1 spinor snapshot (its grid must
/// match). Throws ConfigError for invalid specs and SnapshotError for bad files.
SpinorField make_initial_data(const InitialDataSpec& spec, const Grid& grid);

}  // namespace pauli
