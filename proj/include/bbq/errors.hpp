#pragma once

#include <stdexcept>

namespace bbq {

struct DimensionError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

/// Requested object exceeds a configured size cap.
struct CapacityError : std::length_error
{
  using std::length_error::length_error;
};

struct DomainError : std::domain_error
{
  using std::domain_error::domain_error;
};

/// A caller-supplied configuration would give silently inexact results.
struct ConfigurationError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

/// An identity that must hold by construction was violated.
struct ConsistencyError : std::logic_error
{
  using std::logic_error::logic_error;
};

} // namespace bbq
