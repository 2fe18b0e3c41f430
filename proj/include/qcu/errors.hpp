#pragma once

#include <stdexcept>
#include <string>

namespace qcu {

/// Malformed or inconsistent input (duplicate names, unknown fields, bad grids).
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& what, std::string field = {})
      : std::invalid_argument(what), field_(std::move(field)) {}

  /// Name of the offending field, empty when not attributable to one.
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// A physical or mathematical precondition is violated (E < V, k <= 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The chosen non-dimensionalization scale vanishes.
class ScalingError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The request is well formed but outside what the library models.
class UnsupportedError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace qcu
