#ifndef D2Q9LAB_ERRORS_HPP_
#define D2Q9LAB_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace d2q9lab {

/// Out-of-range or inconsistent numerical parameter.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A requested physical target cannot be met by any admissible relaxation rate.
class InfeasibleError : public ParameterError {
public:
  using ParameterError::ParameterError;
};

/// Explicit time step above the scheme's stability bound.
class StabilityError : public ParameterError {
public:
  StabilityError(const std::string& what, double bound) : ParameterError(what), bound_(bound) {}
  double bound() const noexcept { return bound_; }

private:
  double bound_;
};

/// Input outside the domain where a closed form applies.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Eigenvalue without a usable logarithm.
class BranchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// All violations found while validating a configuration.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) {
      out += "\n  ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace d2q9lab

#endif  // D2Q9LAB_ERRORS_HPP_
