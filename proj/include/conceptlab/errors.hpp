#pragma once

#include <stdexcept>
#include <string>

namespace conceptlab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric input outside its documented range, or a broken invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Unknown identifier (state, context, property, measurement setting).
class LookupError : public Error {
 public:
  using Error::Error;
};

// No model reproduces the requested probabilities; carries the deviation
// and the bound so callers can report how far off the data was.
class InfeasibleError : public ValidationError {
 public:
  InfeasibleError(double delta, double kappa)
      : ValidationError("infeasible: |delta| = " + std::to_string(std::abs(delta)) +
                        " exceeds bound kappa = " + std::to_string(kappa)),
        delta_(delta),
        kappa_(kappa) {}

  double delta() const { return delta_; }
  double kappa() const { return kappa_; }

 private:
  double delta_;
  double kappa_;
};

// Malformed input text; row is the 1-based physical line (CSV) or the
// 0-based record index (JSON), already spelled out in the message.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, long row = -1)
      : Error(message), row_(row) {}

  long row() const { return row_; }

 private:
  long row_;
};

// A term combination whose reference frequency is zero, so no weight exists.
class UndefinedWeightError : public Error {
 public:
  using Error::Error;
};

// Filesystem and stream failures; the CLI maps these to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace conceptlab
