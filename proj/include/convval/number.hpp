#pragma once

#include <string>

#include "convval/rational.hpp"

namespace convval {

/// Either an exact rational or a double. Arithmetic stays exact only while
/// both operands are exact.
class Number {
 public:
  Number() = default;
  Number(Rational q) : exact_(true), q_(std::move(q)) {}  // NOLINT: implicit by design
  static Number inexact(double d) {
    Number n;
    n.exact_ = false;
    n.d_ = d;
    return n;
  }

  bool is_exact() const { return exact_; }
  /// Throws std::logic_error when inexact.
  const Rational& exact() const;
  double to_double() const { return exact_ ? convval::to_double(q_) : d_; }

  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);
  Number operator-() const;
  Number& operator+=(const Number& o) { return *this = *this + o; }

  /// Exact values compare exactly; anything else compares as doubles.
  friend bool operator==(const Number& a, const Number& b);

 private:
  bool exact_ = true;
  Rational q_ = 0;
  double d_ = 0.0;
};

/// "p/q" for exact values, 17 significant digits otherwise.
std::string to_string(const Number& x);
std::string format_double(double d);

/// |a - b| as a double (0 exactly when both are exact and equal).
double abs_difference(const Number& a, const Number& b);

}  // namespace convval
