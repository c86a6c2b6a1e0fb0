#pragma once

// Experiment drivers behind the `pauli` executable. Each returns the process
// exit status: 0 when every gate passes, 1 when a gate fails, 2 on errors (an
// error.json record is written to the output directory).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pauli/config.hpp"
#include "pauli/diagnostics.hpp"

namespace pauli {

struct RunGates {
  double charge_tolerance = 1e-8;
  double energy_tolerance = 1e-6;
  double monotone_slack = 1e-8;
  double darwin_gauge_tolerance = 1e-12;
  double cauchy_schwarz_slack = 1e-10;
};

/// Writes error.json ({"error", "message", optional "key"}) into `out` and
/// echoes the error to stderr.
void write_error_record(const std::filesystem::path& out, const std::string& kind, const std::string& message,
                        const std::string& key = "");

int cmd_run(const RunConfig& config, const std::filesystem::path& out, const RunGates& gates = {});
int cmd_sweep(const RunConfig& config, const std::filesystem::path& out);
int cmd_verify(std::uint64_t seed, const std::filesystem::path& out, Mutation mutation = Mutation::none,
               int samples = 4);
int cmd_convergence(const RunConfig& config, const std::filesystem::path& out);

}  // namespace pauli
