#pragma once

#include <stdexcept>
#include <string>

namespace oscatter {

// Base class for every failure this library reports on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Cell Poisson right-hand side has a nonzero mean.
struct SolvabilityViolation : Error {
  using Error::Error;
};

// Two spectra or fields live on incompatible cells/grids.
struct CellMismatch : Error {
  using Error::Error;
};

struct GridMismatch : Error {
  using Error::Error;
};

// Kernel or far-field request for a dimension that is not built.
struct UnsupportedDimension : Error {
  using Error::Error;
};

// Kernel evaluated at a point where it has no finite value.
struct SingularEvaluation : Error {
  using Error::Error;
};

// Discrete scattering system is numerically singular (trapped mode or
// a genuinely resonant configuration).
struct SingularSystem : Error {
  using Error::Error;
};

// A stencil or rule needs more nodes than the grid provides.
struct GridTooCoarse : Error {
  using Error::Error;
};

// Evaluation point outside the grid's cover.
struct OutOfDomain : Error {
  using Error::Error;
};

// Operation applied to the wrong expansion kind (source vs plane wave).
struct WrongProblemKind : Error {
  using Error::Error;
};

// Rate fit asked for on data it cannot support.
struct DegenerateFit : Error {
  using Error::Error;
};

// Config file fails validation.
struct ConfigInvalid : Error {
  using Error::Error;
};

// A requested grid or matrix would exceed the configured resource cap.
struct ResourceCap : Error {
  using Error::Error;
};

struct IoFailure : Error {
  using Error::Error;
};

}  // namespace oscatter
