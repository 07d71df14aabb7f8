#pragma once

#include <stdexcept>
#include <string>

namespace flowmon {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file or stream record. Carries a human-readable location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, const std::string& where)
      : Error(where + ": " + what), location_(where) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

// A domain invariant or precondition was violated.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Alignment search gave up after expanding the configured number of states.
class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, std::size_t cap)
      : Error(what + " (node cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace flowmon
