#pragma once

#include <stdexcept>
#include <string>

namespace schrolab {

/// Base class of every error raised by the library. `category()` is a stable
/// machine-readable tag used by the CLI when it writes error records.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* category() const noexcept { return "error"; }
};

/// A function was handed a GridFunction in the wrong representation.
class ContractError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "contract"; }
};

/// Invalid argument value (negative order, empty region, bad dimension...).
class InputError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "input"; }
};

/// A NormSpec / MixedNormSpec / config invariant was violated.
class SpecError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "spec"; }
};

/// The grid cannot represent the requested object (frequency above xi_max,
/// off-lattice mode, under-resolved region...).
class ResolutionError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "resolution"; }
};

/// A randomization plan's active set does not cover the data's support.
class CoverageError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "coverage"; }
};

/// Ratio with a vanishing denominator.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "degenerate"; }
};

class FitError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "fit"; }
};

/// Experiment configuration failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "validation"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "io"; }
};

}  // namespace schrolab
