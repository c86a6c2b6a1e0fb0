#pragma once

// Thin FFTW wrapper. Forward transforms are unnormalized; inverse transforms
// carry the 1/n^3 factor so that inverse(forward(f)) == f.
//
// Complex spectra use the grid layout (x-fastest). Real-to-complex spectra
// keep only x-modes 0..n/2, laid out as i + (n/2 + 1) * (j + n * k).

#include <span>
#include <vector>

#include "pauli/fields.hpp"

namespace pauli::fft {

std::size_t half_size(const Grid& g);

void forward(const Grid& g, std::span<const cplx> in, std::span<cplx> out);
void inverse(const Grid& g, std::span<const cplx> in, std::span<cplx> out);
ComplexArray forward(const Grid& g, std::span<const cplx> in);
ComplexArray inverse(const Grid& g, std::span<const cplx> in);

ComplexArray forward_real(const Grid& g, std::span<const double> in);
/// The input spectrum must be Hermitian-consistent (as produced by forward_real).
RealArray inverse_real(const Grid& g, std::span<const cplx> in);

}  // namespace pauli::fft
