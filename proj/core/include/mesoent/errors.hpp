#pragma once

#include <stdexcept>
#include <string>

namespace mesoent {

/// Input outside the physical domain of the model (T <= 0, eta >= 1, t < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller broke a documented precondition (non-Hermitian input, shape mismatch).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical routine failed or two independent routes disagreed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The microscopic generator does not close on the eight fluctuation observables.
class ClosureViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration; carries the offending field name.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace mesoent
