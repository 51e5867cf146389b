#pragma once

#include <stdexcept>
#include <string>

namespace catsense {

/// Base of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller asked for something ill-formed: bad state parameters, mismatched
/// dimensions or grids, unsupported combinations.
class spec_error : public error {
 public:
  using error::error;
};

/// A well-formed request whose numerics could not be carried out to the
/// required accuracy (truncation too small, quadrature failure, missing
/// features in a field).
class numerical_error : public error {
 public:
  using error::error;
};

#define CATSENSE_DEFINE_ERROR(name, base)            \
  class name : public base {                         \
   public:                                           \
    explicit name(const std::string& what)           \
        : base(std::string(#name ": ") + what) {}    \
  };

CATSENSE_DEFINE_ERROR(DegenerateState, spec_error)
CATSENSE_DEFINE_ERROR(DimensionMismatch, spec_error)
CATSENSE_DEFINE_ERROR(GridMismatch, spec_error)
CATSENSE_DEFINE_ERROR(UnsupportedK, spec_error)
CATSENSE_DEFINE_ERROR(UnsupportedSpec, spec_error)

CATSENSE_DEFINE_ERROR(TruncationTooSmall, numerical_error)
CATSENSE_DEFINE_ERROR(ZeroImage, numerical_error)
CATSENSE_DEFINE_ERROR(UndefinedQ, numerical_error)
CATSENSE_DEFINE_ERROR(QuadratureNotConverged, numerical_error)
CATSENSE_DEFINE_ERROR(NoFringesDetected, numerical_error)
CATSENSE_DEFINE_ERROR(LobesNotSeparated, numerical_error)
CATSENSE_DEFINE_ERROR(NoCentralPattern, numerical_error)

#undef CATSENSE_DEFINE_ERROR

}  // namespace catsense
