#include "pauli/initial_data.hpp"

#include <cmath>

#include "pauli/errors.hpp"
#include "pauli/snapshot.hpp"
#include "pauli/spinor.hpp"

namespace pauli {
namespace {

// Images within this many box lengths are summed; beyond that the Gaussian
// tail is far below roundoff for widths up to L / 4.
constexpr int kImages = 2;

SpinorField gaussian(const InitialDataSpec& spec, const Grid& g) {
  const double L = g.box_length;
  const double w2 = spec.width * spec.width;
  std::vector<std::vector<cplx>> axis(3, std::vector<cplx>(g.n));
  // The packet factorizes over axes.
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < g.n; ++i) {
      cplx acc{};
      for (int m = -kImages; m <= kImages; ++m) {
        const double d = g.coordinate(i) - spec.center[a] + m * L;
        acc += std::exp(cplx{-d * d / (2.0 * w2), spec.momentum[a] * d});
      }
      axis[a][i] = acc;
    }
  }
  SpinorField u(g);
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const std::size_t p = g.index(i, j, k);
        const cplx amp = axis[0][i] * axis[1][j] * axis[2][k];
        u.u1[p] = spec.spin[0] * amp;
        u.u2[p] = spec.spin[1] * amp;
      }
  return u;
}

SpinorField plane_wave(const InitialDataSpec& spec, const Grid& g) {
  SpinorField u(g);
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double phase = spec.momentum[0] * g.coordinate(i) + spec.momentum[1] * g.coordinate(j) +
                             spec.momentum[2] * g.coordinate(k);
        const cplx e = std::polar(1.0, phase);
        const std::size_t p = g.index(i, j, k);
        u.u1[p] = spec.spin[0] * e;
        u.u2[p] = spec.spin[1] * e;
      }
  return u;
}

}  // namespace

SpinorField make_initial_data(const InitialDataSpec& spec, const Grid& grid) {
  if (!(spec.norm > 0.0)) throw ConfigError(ConfigError::Kind::InvariantViolation, "initial_data.norm", "norm must be > 0");
  SpinorField u;
  if (spec.kind == "gaussian_packet" || spec.kind == "plane_wave") {
    if (std::abs(spec.spin[0]) + std::abs(spec.spin[1]) == 0.0) {
      throw ConfigError(ConfigError::Kind::InvariantViolation, "initial_data.spin", "spin state must be nonzero");
    }
    if (spec.kind == "gaussian_packet") {
      if (!(spec.width > 0.0)) {
        throw ConfigError(ConfigError::Kind::InvariantViolation, "initial_data.width", "width must be > 0");
      }
      u = gaussian(spec, grid);
    } else {
      u = plane_wave(spec, grid);
    }
  } else if (spec.kind == "file") {
    u = read_spinor(spec.path);
    require_same_grid(grid, u.grid);
  } else {
    throw ConfigError(ConfigError::Kind::TypeError, "initial_data.kind", "unknown initial data kind '" + spec.kind + "'");
  }
  const double norm = std::sqrt(norm_squared(u));
  if (!(norm > 0.0)) throw ConfigError(ConfigError::Kind::InvariantViolation, "initial_data", "initial data vanishes");
  u *= spec.norm / norm;
  return u;
}

}  // namespace pauli
