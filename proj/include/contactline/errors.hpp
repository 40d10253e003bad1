#pragma once

#include <stdexcept>
#include <string>

namespace contactline {

// Root of every fault raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |beta| fell below the configured floor; the velocity quotient is undefined.
class BetaNearZero : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class DtUnderflow : public Error {
 public:
  using Error::Error;
};

// Too short, or times not strictly increasing.
class BadSeries : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

// Log-log slope q <= 1/4, where p = q / (4q - 1) is undefined.
class InvalidSlope : public Error {
 public:
  using Error::Error;
};

class BlowupReached : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace contactline
