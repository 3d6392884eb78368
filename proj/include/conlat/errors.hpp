#ifndef CONLAT_ERRORS_HPP
#define CONLAT_ERRORS_HPP

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace conlat {

// Base class for all workbench errors. The CLI maps these to exit code 2;
// exit code 1 is reserved for check commands whose verified property is false.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad JSON, incomplete tables, parse errors.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Precondition violation: unknown element id, bad dimensions, values
// outside the structure an operation was asked to work in.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A search or sweep exceeded its configured budget or size cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Wall-clock cutoff for the search routines. A default-constructed
// deadline never expires.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after(std::chrono::milliseconds ms) {
    Deadline d;
    d.at_ = std::chrono::steady_clock::now() + ms;
    return d;
  }

  bool expired() const {
    return at_ && std::chrono::steady_clock::now() >= *at_;
  }

  void check(const std::string& what) const {
    if (expired()) throw BudgetError(what + ": time budget exceeded");
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace conlat

#endif  // CONLAT_ERRORS_HPP
