#pragma once

#include <stdexcept>
#include <string>

namespace ntrulab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands whose ring degree or vector length disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

// Parameters violating a documented precondition (bad N, q, d, delta, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class DependentRows : public Error {
 public:
  using Error::Error;
};

// Floating-point LLL could not make progress; retry with more precision or exact mode.
class PrecisionFailure : public Error {
 public:
  using Error::Error;
};

class RankTooLarge : public Error {
 public:
  using Error::Error;
};

class RetryBudgetExhausted : public Error {
 public:
  using Error::Error;
};

class CacheCorrupt : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ntrulab
