#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "convval/rational.hpp"

namespace convval {

/// Univariate polynomial with rational coefficients in ascending order.
/// Trailing zero coefficients are always trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);

  static Polynomial constant(const Rational& c);
  /// c t^k.
  static Polynomial monomial(const Rational& c, std::size_t k);

  const std::vector<Rational>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const;
  double eval_double(double t) const;

  Polynomial derivative() const;
  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const;
  /// t -> p(t + c).
  Polynomial shifted(const Rational& c) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::string to_string(const Polynomial& p);

/// ∫_a^b p.
Rational integrate(const Polynomial& p, const Rational& a, const Rational& b);

/// Quotient and remainder; throws InvalidArgument on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Yun decomposition: p = c * f_1 * f_2^2 * f_3^3 * ..., each f_i squarefree
/// and monic; entry i-1 holds f_i.
std::vector<Polynomial> squarefree_factors(const Polynomial& p);

/// Distinct real roots of p in the open interval (a, b).
std::size_t count_roots(const Polynomial& p, const Rational& a, const Rational& b);
/// Distinct real roots of p in (a, +inf).
std::size_t count_roots_above(const Polynomial& p, const Rational& a);

/// p >= 0 on [a, b], decided exactly.
bool nonnegative_on(const Polynomial& p, const Rational& a, const Rational& b);
/// p >= 0 on [a, +inf), decided exactly.
bool nonnegative_on_ray(const Polynomial& p, const Rational& a);

/// Unique polynomial of degree < xs.size() through the points (Newton form).
Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// Binomial coefficient as a rational.
Rational binomial(std::size_t n, std::size_t k);
Rational factorial(std::size_t n);

}  // namespace convval
