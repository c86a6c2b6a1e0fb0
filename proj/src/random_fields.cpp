#include "pauli/random_fields.hpp"

#include <cmath>
#include <cstdlib>

#include "pauli/fft.hpp"
#include "pauli/spectral.hpp"

namespace pauli {
namespace {

ComplexArray random_band_limited(const Grid& g, Rng& rng, int band) {
  if (band < 0) band = default_band(g);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto m = [&](int idx) { return std::abs(idx < g.n / 2 ? idx : idx - g.n); };
  const double count = std::pow(2.0 * band + 1.0, 3);
  const double scale = static_cast<double>(g.size()) / std::sqrt(count);
  ComplexArray spec(g.size());
  spectral::for_each_mode(g, [&](std::size_t idx, int i, int j, int k) {
    if (m(i) <= band && m(j) <= band && m(k) <= band) {
      const double re = dist(rng);
      const double im = dist(rng);
      spec[idx] = cplx{re, im} * scale;
    }
  });
  return fft::inverse(g, spec);
}

RealArray real_part(const ComplexArray& z) {
  RealArray out(z.size());
  for (std::size_t p = 0; p < z.size(); ++p) out[p] = z[p].real();
  return out;
}

}  // namespace

int default_band(const Grid& g) { return g.n / 4 - 1; }

SpinorField random_spinor(const Grid& g, Rng& rng, int band) {
  SpinorField u(g);
  u.u1 = random_band_limited(g, rng, band);
  u.u2 = random_band_limited(g, rng, band);
  return u;
}

ScalarField random_scalar(const Grid& g, Rng& rng, int band) {
  return ScalarField(g, real_part(random_band_limited(g, rng, band)));
}

VectorField random_vector(const Grid& g, Rng& rng, int band) {
  VectorField v(g);
  for (int a = 0; a < 3; ++a) v[a] = real_part(random_band_limited(g, rng, band));
  return v;
}

}  // namespace pauli
