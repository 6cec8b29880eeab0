#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace parkfn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside the documented domain (out-of-range preference, m > n, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed canonical text.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// Raised by park() when some car runs off the end of the street.
class NotAParkingFunction : public Error {
 public:
  explicit NotAParkingFunction(std::size_t car)
      : Error("car " + std::to_string(car) + " finds no free spot"), car_(car) {}

  /// 1-based index of the first car that fails to park.
  std::size_t car() const noexcept { return car_; }

 private:
  std::size_t car_;
};

/// A (specification, order permutation) pair that does not encode a parking function.
class CompatibilityError : public Error {
 public:
  CompatibilityError(std::string condition, const std::string& detail)
      : Error(condition + ": " + detail), condition_(std::move(condition)) {}

  /// One of "length", "sum", "permutation", "block-order", "balance".
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// An enumeration or brute-force computation would exceed its configured cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Zero raised to a negative power, or a formula evaluated outside its regime.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// shuffle_decompose() on a tail that admits no feasible first preference.
class NoFeasibleFirst : public Error {
 public:
  using Error::Error;
};

}  // namespace parkfn
