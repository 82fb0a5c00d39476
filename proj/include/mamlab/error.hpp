#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mamlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON schema, bad parameters, out-of-range indices.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Scalar expression syntax or semantic error, carrying the byte offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : InputError(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

/// An interval enclosure still straddles zero at the maximum working precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// The data do not satisfy a precondition of the requested operation
/// (e.g. the vectors do not span, the complex is not the expected shape).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace mamlab
