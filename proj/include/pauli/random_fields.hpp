#pragma once

// Reproducible random test fields of order-one amplitude. Every field is band-limited to
// |m| <= band on each axis (integer mode index m); the default band n/4 - 1
// keeps products of two fields representable on the grid, so spectral
// product rules hold to roundoff.

#include <random>

#include "pauli/fields.hpp"

namespace pauli {

using Rng = std::mt19937_64;

int default_band(const Grid& g);

SpinorField random_spinor(const Grid& g, Rng& rng, int band = -1);
ScalarField random_scalar(const Grid& g, Rng& rng, int band = -1);
VectorField random_vector(const Grid& g, Rng& rng, int band = -1);

}  // namespace pauli
