#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace qsos {

class NotPsdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One of the exceptional conditions E1..E11 (or a precondition derived from them) holds.
class GenericityError : public std::runtime_error {
 public:
  GenericityError(std::string condition, const std::string& what)
      : std::runtime_error(condition + ": " + what), condition_(std::move(condition)) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

/// The form has a zero on the sphere (min <= tau_pos), so the real-zero route applies.
class HasRealZeroError : public std::domain_error {
 public:
  HasRealZeroError(double min, std::array<double, 3> v)
      : std::domain_error("not strictly positive"), min_(min), v_(v) {}
  double min() const { return min_; }
  const std::array<double, 3>& argmin() const { return v_; }

 private:
  double min_;
  std::array<double, 3> v_;
};

/// Path tracking, Newton polishing or a residual check failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsos
