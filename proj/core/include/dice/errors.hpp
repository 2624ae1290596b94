#pragma once

#include <stdexcept>
#include <string>

namespace dice {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible (p, rank) shapes, or an index is out of range.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A line was requested through the zero vector.
class DegenerateLine : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class NonPrimeError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a config file, word, point literal or vertex path.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// |Y_i| differs from the rank of the next level.
class ChainError : public ParseError {
 public:
  using ParseError::ParseError;
};

class IdentityPointError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DuplicatePointError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A vertex letter does not fit the alphabet of its tree level.
class PathShapeError : public ShapeError {
 public:
  PathShapeError(const std::string& what, int depth)
      : ShapeError("depth " + std::to_string(depth) + ": " + what),
        depth_(depth) {}

  int depth() const noexcept { return depth_; }

 private:
  int depth_;
};

/// Elements from different levels were combined.
class LevelMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid limits or options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dice
