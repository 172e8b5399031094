#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Raised when an answer would depend on p-adic digits beyond the working
// precision. Callers either resample or retry at a larger precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class DenominatorNotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotInterlacing : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroPointWithNegativeWeight : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RepeatedPoints : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class KernelPole : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Signals an implementation bug: a proven identity failed on exact data.
class InequalityViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConstraintViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace padic
