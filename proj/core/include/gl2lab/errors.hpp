#pragma once

#include <stdexcept>
#include <string>

namespace gl2lab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A valuation or residue could not be certified at the working precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain of definition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured element cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// No vertex within the search depth is stabilized.
class NotStabilizable : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (matrices, ring elements, CLI arguments).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Element cap for enumerations. Reads GL2LAB_MAX_ELEMS once; defaults to 2'000'000.
long long max_elements();

/// Throws ResourceLimit when `count` exceeds max_elements().
void check_resource(long long count, const std::string& what);

}  // namespace gl2lab
