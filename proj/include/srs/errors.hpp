#ifndef SRS_ERRORS_HPP
#define SRS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace srs {

/// Input outside the domain where a model or formula is defined.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent scenario configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical stage failed to reach its requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

} // namespace srs

#endif // SRS_ERRORS_HPP
