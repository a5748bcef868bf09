#pragma once

#include <stdexcept>
#include <string>

namespace mroot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed metric spec or spec file.
class SpecError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Jet/matrix shapes or truncation orders disagree.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A <= 0 where a fractional power of A is needed.
class NonPositiveA : public Error {
 public:
  explicit NonPositiveA(double a)
      : Error("A must be positive for fractional powers, got A = " + std::to_string(a)),
        value(a) {}
  double value;
};

/// The Hessian A_ij (or g_ij) is singular at the requested point.
class DegenerateMetric : public Error {
 public:
  explicit DegenerateMetric(double det)
      : Error("degenerate metric: det = " + std::to_string(det)), det(det) {}
  double det;
};

/// Too few admissible sample directions after the rejection budget.
class SamplingStarved : public Error {
 public:
  using Error::Error;
};

/// Least-squares problem has fewer equations than unknowns.
class Underdetermined : public Error {
 public:
  using Error::Error;
};

}  // namespace mroot
