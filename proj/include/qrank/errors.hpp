#ifndef QRANK_ERRORS_HPP
#define QRANK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition on an argument (bad q, alpha, dimension, spec).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Trace drift during time stepping; the step size is too large.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// More than one stationary state (zero eigenvalue with multiplicity > 1).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrank

#endif  // QRANK_ERRORS_HPP
