#pragma once

#include <stdexcept>
#include <string>

namespace spartan {

// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller asked for something the library cannot do (bad arguments, caps).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Input data is malformed (non-finite values, ragged CSV rows, bad indices).
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

// A numeric routine failed (singular matrix, eigen-solver breakdown).
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace spartan
