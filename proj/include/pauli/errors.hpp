#pragma once

#include <stdexcept>
#include <string>

namespace pauli {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

class GridMismatch : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "GridMismatch"; }
};

/// The fixed-point solve for the magnetic potential exhausted its budget or
/// stopped decreasing its residual.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}
  const char* kind() const noexcept override { return "NonConvergence"; }
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Picard iteration on the Duhamel integral did not contract; retry with a
/// smaller time step.
class PicardNonConvergence : public Error {
 public:
  PicardNonConvergence(const std::string& what, int iterations, double update)
      : Error(what), iterations_(iterations), update_(update) {}
  const char* kind() const noexcept override { return "PicardNonConvergence"; }
  int iterations() const noexcept { return iterations_; }
  double update() const noexcept { return update_; }

 private:
  int iterations_;
  double update_;
};

class BlowUpGuardTriggered : public Error {
 public:
  BlowUpGuardTriggered(const std::string& what, double t, double h1)
      : Error(what), t_(t), h1_(h1) {}
  const char* kind() const noexcept override { return "BlowUpGuardTriggered"; }
  double time() const noexcept { return t_; }
  double h1_norm() const noexcept { return h1_; }

 private:
  double t_;
  double h1_;
};

class SnapshotError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "SnapshotError"; }
};

}  // namespace pauli
