#pragma once

#include <stdexcept>
#include <string>

namespace renn {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (bad JSON, bad record shape, bad header).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that violates a data invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Shape or length mismatch between tensors/sequences.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value produced during evaluation or training.
class NumericFault : public Error {
 public:
  using Error::Error;
};

/// The two heads are not connected in the dependency graph.
class NoPathError : public Error {
 public:
  using Error::Error;
};

/// Elementwise product of distributions has zero mass everywhere.
class DegenerateProductError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace renn
