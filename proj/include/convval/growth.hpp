#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "convval/number.hpp"
#include "convval/polynomial.hpp"

namespace convval {

/// e^{-lambda s} P(s) with s measured from the last breakpoint.
struct ExpTail {
  Rational lambda;
  Polynomial poly;

  friend bool operator==(const ExpTail&, const ExpTail&) = default;
};

/// Scalar function on R given by `head` on (-inf, b_0), `pieces[i]` on
/// [b_i, b_{i+1}), and on [b_m, inf) either the tail or zero.
class PiecewisePoly {
 public:
  /// The zero function with a single breakpoint at 0.
  PiecewisePoly();
  /// Throws InvalidArgument on unsorted breakpoints, a piece count other
  /// than breakpoints - 1, or a tail rate that is not positive.
  PiecewisePoly(std::vector<Rational> breakpoints, Polynomial head, std::vector<Polynomial> pieces,
                std::optional<ExpTail> tail);

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const Polynomial& head() const { return head_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  const std::optional<ExpTail>& tail() const { return tail_; }

  /// Exact except strictly inside the tail region.
  Number operator()(const Rational& t) const;
  double eval_double(double t) const;

  PiecewisePoly derivative() const;
  PiecewisePoly scaled(const Rational& s) const;
  bool is_zero() const;

  /// Smallest breakpoint from which the function vanishes identically;
  /// nullopt when there is a nonzero tail.
  std::optional<Rational> support_sup() const;

  friend bool operator==(const PiecewisePoly&, const PiecewisePoly&) = default;

 private:
  std::vector<Rational> breaks_;
  Polynomial head_;
  std::vector<Polynomial> pieces_;
  std::optional<ExpTail> tail_;
};

/// Continuous growth function with constant head and finite moments of
/// every order.
class GrowthFunction : public PiecewisePoly {
 public:
  GrowthFunction() = default;

  /// Validates continuity at every breakpoint and, when `nonnegative` is
  /// set, certifies the sign exactly. Throws InvalidGrowthFunction carrying
  /// the offending breakpoint.
  static GrowthFunction make(std::vector<Rational> breakpoints, const Rational& head,
                             std::vector<Polynomial> pieces, std::optional<ExpTail> tail,
                             bool nonnegative = false);
  static GrowthFunction make(const PiecewisePoly& f, bool nonnegative = false);

  bool nonnegative() const { return nonnegative_; }

 private:
  explicit GrowthFunction(PiecewisePoly f, bool nonneg) : PiecewisePoly(std::move(f)), nonnegative_(nonneg) {}
  bool nonnegative_ = false;
};

/// Cone growth functions share the piecewise structure.
using PsiFunction = PiecewisePoly;

/// ∫_lo^hi f(t) w(t) dt, hi = nullopt meaning +inf. Exact unless a tail
/// piece is cut at a point other than its anchor.
Number integrate_against(const PiecewisePoly& f, const Polynomial& w, const Rational& lo,
                         const std::optional<Rational>& hi);

/// ∫_0^inf t^k f(t) dt.
Number moment(const PiecewisePoly& f, std::size_t k);

/// psi_n(t) = n ∫_t^inf (r - t)^{n-1} zeta(r) dr, symbolically. The result
/// has the breakpoints of zeta and a tail with the same rate.
PsiFunction psi_from_zeta(const PiecewisePoly& zeta, std::size_t n);

/// ((-1)^n / n!) times the n-th derivative.
PiecewisePoly signed_scaled_derivative(const PiecewisePoly& psi, std::size_t n);

}  // namespace convval
