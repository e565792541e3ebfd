#pragma once

#include <stdexcept>
#include <string>

namespace kaddlab {

// Raised when a constructor or operation receives arguments outside its
// documented domain. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a numeric operation cannot produce a representable result
// (for example e^t overflowing).
class RangeError : public std::range_error {
public:
  explicit RangeError(const std::string& what) : std::range_error(what) {}
};

}  // namespace kaddlab
