#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace halfint {

// Base of every error raised by the library. Callers that only need to know
// "computation failed" catch this; the derived types carry the reason.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidRing : public Error {
 public:
  using Error::Error;
};

class RingMismatch : public Error {
 public:
  RingMismatch() : Error("operands live in different coefficient rings") {}
};

class NonInvertibleDenominator : public Error {
 public:
  explicit NonInvertibleDenominator(std::string what, std::ptrdiff_t index = -1)
      : Error(std::move(what)), index_(index) {}
  // Coefficient index of the offending entry, or -1 for a scalar.
  std::ptrdiff_t index() const { return index_; }

 private:
  std::ptrdiff_t index_;
};

class NonInvertibleElement : public Error {
 public:
  using Error::Error;
};

class NonInvertibleLeadingCoefficient : public Error {
 public:
  NonInvertibleLeadingCoefficient()
      : Error("constant term of the series is not a unit") {}
};

class UnsupportedRing : public Error {
 public:
  using Error::Error;
};

class InvalidWeight : public Error {
 public:
  using Error::Error;
};

class PrecisionTooLow : public Error {
 public:
  using Error::Error;
};

class IndependenceFailure : public Error {
 public:
  using Error::Error;
};

class NotStable : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace halfint
