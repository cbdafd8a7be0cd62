#pragma once

#include <stdexcept>
#include <string>

namespace lensinv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Six lengths that do not span a nondegenerate Euclidean tetrahedron.
class DegenerateTetrahedron : public Error {
 public:
  using Error::Error;
};

/// Coincident apexes in a two-tetrahedron configuration.
class FlatConfiguration : public Error {
 public:
  using Error::Error;
};

/// Metric data that does not fit the complex it is attached to.
class InvalidMetric : public Error {
 public:
  using Error::Error;
};

/// Pre-simplicial complex violating its structural invariants.
class InvalidComplex : public Error {
 public:
  using Error::Error;
};

/// (p, q, k) outside the admissible range or not coprime.
class InvalidLensParams : public Error {
 public:
  using Error::Error;
};

/// Realization with a vanishing tetrahedron volume.
class DegenerateRealization : public Error {
 public:
  using Error::Error;
};

/// Free-length Jacobian (or F restricted to C) is numerically singular.
class SingularJacobian : public Error {
 public:
  using Error::Error;
};

}  // namespace lensinv
