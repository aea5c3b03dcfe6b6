#pragma once

#include <stdexcept>
#include <string>

namespace phonon {

/// Input outside an operation's mathematical domain (exit code 1 at the CLI).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its tolerance (exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration document; `field` names the offending JSON path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Configuration file could not be opened.
class ConfigMissing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phonon
