#ifndef SPK_ERROR_HPP
#define SPK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spk {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter combination that is valid mathematically but not supported here.
class UnsupportedParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Duplicate or coincident input points.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sample grid too coarse for the requested derivative order.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature did not reach the requested tolerance on the largest rule.
/// Carries the best available estimate.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(const std::string& what, double best_value, double err_bound)
      : std::runtime_error(what), best_value_(best_value), err_bound_(err_bound) {}

  double best_value() const noexcept { return best_value_; }
  double err_bound() const noexcept { return err_bound_; }

 private:
  double best_value_;
  double err_bound_;
};

}  // namespace spk

#endif  // SPK_ERROR_HPP
