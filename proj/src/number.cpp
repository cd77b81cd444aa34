#include "convval/number.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace convval {

const Rational& Number::exact() const {
  if (!exact_) throw std::logic_error("Number: value is not exact");
  return q_;
}

Number operator+(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(a.q_ + b.q_);
  return Number::inexact(a.to_double() + b.to_double());
}

Number operator-(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(a.q_ - b.q_);
  return Number::inexact(a.to_double() - b.to_double());
}

Number operator*(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(a.q_ * b.q_);
  return Number::inexact(a.to_double() * b.to_double());
}

Number operator/(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) {
    if (b.q_ == 0) throw std::domain_error("Number: division by zero");
    return Number(a.q_ / b.q_);
  }
  return Number::inexact(a.to_double() / b.to_double());
}

Number Number::operator-() const { return exact_ ? Number(-q_) : inexact(-d_); }

bool operator==(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  return a.to_double() == b.to_double();
}

std::string format_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::string to_string(const Number& x) {
  return x.is_exact() ? to_string(x.exact()) : format_double(x.to_double());
}

double abs_difference(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return std::abs(convval::to_double(a.exact() - b.exact()));
  return std::abs(a.to_double() - b.to_double());
}

}  // namespace convval
