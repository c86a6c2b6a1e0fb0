#pragma once

// Run configuration: INI sections mirroring the library modules.
//
//   [grid]          n, box_length
//   [field_solver]  gauge, tolerance, max_iterations, damping, warm_start, current_form
//   [evolution]     epsilon, dt, T, scheme, picard_tol, picard_max_iterations,
//                   dealias, coupling, blowup_guard, c_guard, hs_order
//   [initial_data]  kind, center, width, momentum, spin, path, norm
//   [output]        directory, stride, snapshots, snapshot_stride
//   [sweep]         epsilons
//   [convergence]   dt_list, n_list
//   [run]           seed

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pauli/evolution.hpp"
#include "pauli/hamiltonian.hpp"

namespace pauli {

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { MissingKey, TypeError, InvariantViolation, UnknownKey, FileError };

  ConfigError(Kind kind, std::string key, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }
  const char* kind_name() const noexcept;

 private:
  Kind kind_;
  std::string key_;
};

struct InitialDataSpec {
  /// gaussian_packet | plane_wave | file
  std::string kind = "gaussian_packet";
  /// Defaults to the box center when not given.
  std::array<double, 3> center{};
  bool center_given = false;
  double width = 0.0;
  std::array<double, 3> momentum{};
  std::array<cplx, 2> spin{};
  std::string path;
  /// Target L^2 norm.
  double norm = 1.0;
};

struct RunConfig {
  int n = 0;
  double box_length = 0.0;
  Model model;
  double dt = 0.0;
  double T = 0.0;
  StepOptions step;
  double blowup_guard = 1e6;
  double c_guard = 10.0;
  double hs_order = 2.0;
  InitialDataSpec initial;
  std::string output_directory = "out";
  int stride = 10;
  bool snapshots = false;
  int snapshot_stride = 0;  ///< 0 means "same as stride"
  std::vector<double> sweep_epsilons{0.2, 0.1, 0.05, 0.025};
  std::vector<double> dt_list;
  std::vector<int> n_list;
  std::uint64_t seed = 1;
};

/// key path ("section.key") -> value, applied on top of the file.
using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Splits "section.key=value"; throws ConfigError(TypeError) when malformed.
std::pair<std::string, std::string> parse_override(const std::string& assignment);

RunConfig parse_config(const std::filesystem::path& path, const Overrides& overrides = {});
RunConfig parse_config_string(const std::string& text, const Overrides& overrides = {});

/// INI text listing every key with its resolved value.
std::string resolved_config(const RunConfig& c);

/// Parses "a", "bi", "a+bi" or "a-bi".
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

}  // namespace pauli
