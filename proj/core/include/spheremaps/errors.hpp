#pragma once

#include <stdexcept>
#include <string>

namespace spheremaps {

/// Base class for every error raised by the library. `kind()` is a stable
/// identifier (e.g. "NotSquareFree") used in reports and by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SPHEREMAPS_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  }

// exactpoly
SPHEREMAPS_DEFINE_ERROR(NonExactDivision);
SPHEREMAPS_DEFINE_ERROR(ZeroPolynomial);
SPHEREMAPS_DEFINE_ERROR(NotSquareFree);
SPHEREMAPS_DEFINE_ERROR(ParseError);

// sosdecomp
SPHEREMAPS_DEFINE_ERROR(NoConvergence);
SPHEREMAPS_DEFINE_ERROR(DegenerateLeadingCoefficient);
SPHEREMAPS_DEFINE_ERROR(OddMultiplicityRealRoot);
SPHEREMAPS_DEFINE_ERROR(InvalidDegreeParity);
SPHEREMAPS_DEFINE_ERROR(InvalidParameter);

// mapforge
SPHEREMAPS_DEFINE_ERROR(InvalidParity);
SPHEREMAPS_DEFINE_ERROR(InvalidDimension);
SPHEREMAPS_DEFINE_ERROR(DimensionMismatch);
SPHEREMAPS_DEFINE_ERROR(MonomialParityViolation);
SPHEREMAPS_DEFINE_ERROR(ParityMismatch);
SPHEREMAPS_DEFINE_ERROR(DegreeExceeded);
SPHEREMAPS_DEFINE_ERROR(ValidationFailed);
SPHEREMAPS_DEFINE_ERROR(OddLength);
SPHEREMAPS_DEFINE_ERROR(MissingEquatorialMap);

// degreelab
SPHEREMAPS_DEFINE_ERROR(EquatorDegeneracy);
SPHEREMAPS_DEFINE_ERROR(GridTooCoarse);
SPHEREMAPS_DEFINE_ERROR(NormalizationBreakdown);
SPHEREMAPS_DEFINE_ERROR(InsufficientSamples);

#undef SPHEREMAPS_DEFINE_ERROR

/// The residual of a two-square decomposition exceeded the tolerance.
class ResidualTooLarge : public Error {
 public:
  ResidualTooLarge(double residual, double tolerance)
      : Error("ResidualTooLarge", "residual " + std::to_string(residual) +
                                      " exceeds tolerance " +
                                      std::to_string(tolerance)),
        residual_(residual),
        tolerance_(tolerance) {}

  double residual() const noexcept { return residual_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  double residual_;
  double tolerance_;
};

}  // namespace spheremaps
