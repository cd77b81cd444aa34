#pragma once

#include <stdexcept>
#include <string>

#include "convval/rational.hpp"

namespace convval {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnboundedInput : std::domain_error {
  using std::domain_error::domain_error;
};

struct EmptyInput : std::domain_error {
  using std::domain_error::domain_error;
};

struct SingularMatrix : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotUnimodular : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotCoercive : std::domain_error {
  using std::domain_error::domain_error;
};

struct EmptyDomain : std::domain_error {
  using std::domain_error::domain_error;
};

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when the pointwise minimum of two functions is not convex. The
/// witness is a point where min(u, v) exceeds the convex hull function.
struct NotConvexMin : std::domain_error {
  NotConvexMin(const std::string& what, Vec witness_point)
      : std::domain_error(what), witness(std::move(witness_point)) {}
  Vec witness;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A growth function failed validation; `breakpoint` locates the defect.
struct InvalidGrowthFunction : std::invalid_argument {
  InvalidGrowthFunction(const std::string& what, Rational at)
      : std::invalid_argument(what), breakpoint(std::move(at)) {}
  Rational breakpoint;
};

}  // namespace convval
