#pragma once

#include <stdexcept>
#include <string>

namespace germscan {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad rational literal, bad JSON, out-of-range parameter.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Coefficient map violates c_{ba} = conj(c_{ab}).
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// A point required to lie on X does not (within the stated tolerance).
class NotOnVariety : public Error {
 public:
  using Error::Error;
};

/// Grid with wrong cardinality or duplicate points.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class DegenerateCurve : public Error {
 public:
  using Error::Error;
};

class AnchorMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace germscan
