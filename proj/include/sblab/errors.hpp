#pragma once

#include <stdexcept>
#include <string>

namespace sblab {

/// Argument outside the domain where a function is defined (e.g. g(x), x < 1).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Iterative solver failed to converge.
class NumericError : public std::runtime_error
{
  public:
    NumericError(std::string const& what, double residual)
        : std::runtime_error(what), residual_(residual)
    {
    }
    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

/// No boundary crossing was found within the march cap.
class EscapeSuspected : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Query outside the recorded or covered range.
class RangeError : public std::out_of_range
{
  public:
    using std::out_of_range::out_of_range;
};

/// Malformed specification string or invalid parameter combination.
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace sblab
