#include "convval/growth.hpp"

#include <algorithm>
#include <cmath>

#include "convval/errors.hpp"

namespace convval {

namespace {

// e^{-x} a, exact when x = 0.
Number exp_scaled(const Rational& a, const Rational& x) {
  if (x == 0) return Number(a);
  return Number::inexact(to_double(a) * std::exp(-to_double(x)));
}

// G with ∫_a^inf r(s) e^{-lambda s} ds = e^{-lambda a} G(a).
Rational upper_gamma_part(const Polynomial& r, const Rational& lambda, const Rational& a) {
  Rational total = 0;
  const auto& c = r.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    Rational inner = 0;
    Rational a_pow = 1;
    for (std::size_t i = 0; i <= j; ++i) {
      Rational lam_pow = 1;
      for (std::size_t e = 0; e < j - i + 1; ++e) lam_pow *= lambda;
      inner += factorial(j) / factorial(i) * a_pow / lam_pow;
      a_pow *= a;
    }
    total += c[j] * inner;
  }
  return total;
}

// ∫_a^b r(s) e^{-lambda s} ds for 0 <= a, b = nullopt meaning +inf.
Number exp_poly_integral(const Polynomial& r, const Rational& lambda, const Rational& a,
                         const std::optional<Rational>& b) {
  Number out = exp_scaled(upper_gamma_part(r, lambda, a), lambda * a);
  if (b) out = out - exp_scaled(upper_gamma_part(r, lambda, *b), lambda * *b);
  return out;
}

struct Bound {
  bool is_t;
  Rational c;
};

// ∫_alpha^beta (r - t)^{n-1} p(r) dr as a polynomial in t.
Polynomial kernel_integral(const Polynomial& p, std::size_t n, const Bound& alpha, const Bound& beta) {
  Polynomial acc;
  for (std::size_t k = 0; k < n; ++k) {
    const Polynomial f = (Polynomial::monomial(1, k) * p).antiderivative();
    auto at = [&](const Bound& b) { return b.is_t ? f : Polynomial::constant(f(b.c)); };
    const Rational sign = (n - 1 - k) % 2 == 0 ? 1 : -1;
    acc = acc + (sign * binomial(n - 1, k)) * (Polynomial::monomial(1, n - 1 - k) * (at(beta) - at(alpha)));
  }
  return acc;
}

Polynomial power(const Polynomial& p, std::size_t e) {
  Polynomial r = Polynomial::constant(1);
  for (std::size_t i = 0; i < e; ++i) r = r * p;
  return r;
}

Rational pow_int(const Rational& x, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

PiecewisePoly::PiecewisePoly() : breaks_{Rational(0)} {}

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, Polynomial head, std::vector<Polynomial> pieces,
                             std::optional<ExpTail> tail)
    : breaks_(std::move(breakpoints)), head_(std::move(head)), pieces_(std::move(pieces)), tail_(std::move(tail)) {
  if (breaks_.empty()) throw InvalidArgument("piecewise polynomial needs a breakpoint");
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i - 1] < breaks_[i])) throw InvalidArgument("breakpoints must increase strictly");
  }
  if (pieces_.size() + 1 != breaks_.size()) throw InvalidArgument("piece count must be breakpoints - 1");
  if (tail_ && tail_->lambda <= 0) throw InvalidArgument("tail rate must be positive");
  if (tail_ && tail_->poly.is_zero()) tail_.reset();
}

Number PiecewisePoly::operator()(const Rational& t) const {
  if (t < breaks_.front()) return head_(t);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (t < breaks_[i + 1]) return pieces_[i](t);
  }
  if (!tail_) return Rational(0);
  const Rational s = t - breaks_.back();
  return exp_scaled(tail_->poly(s), tail_->lambda * s);
}

double PiecewisePoly::eval_double(double t) const {
  if (t < to_double(breaks_.front())) return head_.eval_double(t);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (t < to_double(breaks_[i + 1])) return pieces_[i].eval_double(t);
  }
  if (!tail_) return 0.0;
  const double s = t - to_double(breaks_.back());
  return std::exp(-to_double(tail_->lambda) * s) * tail_->poly.eval_double(s);
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<Polynomial> d;
  for (const auto& p : pieces_) d.push_back(p.derivative());
  std::optional<ExpTail> t;
  if (tail_) t = ExpTail{tail_->lambda, tail_->poly.derivative() - tail_->lambda * tail_->poly};
  return PiecewisePoly(breaks_, head_.derivative(), std::move(d), std::move(t));
}

PiecewisePoly PiecewisePoly::scaled(const Rational& s) const {
  std::vector<Polynomial> d;
  for (const auto& p : pieces_) d.push_back(s * p);
  std::optional<ExpTail> t;
  if (tail_) t = ExpTail{tail_->lambda, s * tail_->poly};
  return PiecewisePoly(breaks_, s * head_, std::move(d), std::move(t));
}

bool PiecewisePoly::is_zero() const {
  return head_.is_zero() && !tail_ &&
         std::all_of(pieces_.begin(), pieces_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<Rational> PiecewisePoly::support_sup() const {
  if (tail_) return std::nullopt;
  std::size_t j = pieces_.size();
  while (j > 0 && pieces_[j - 1].is_zero()) --j;
  return breaks_[j];
}

GrowthFunction GrowthFunction::make(std::vector<Rational> breakpoints, const Rational& head,
                                    std::vector<Polynomial> pieces, std::optional<ExpTail> tail, bool nonnegative) {
  return make(PiecewisePoly(std::move(breakpoints), Polynomial::constant(head), std::move(pieces), std::move(tail)),
              nonnegative);
}

GrowthFunction GrowthFunction::make(const PiecewisePoly& f, bool nonnegative) {
  const auto& b = f.breakpoints();
  if (f.head().degree() > 0) throw InvalidGrowthFunction("growth function head must be constant", b.front());
  const std::size_t m = f.pieces().size();
  auto right_value = [&](std::size_t i) -> Rational {
    // Value just right of breakpoint i.
    if (i < m) return f.pieces()[i](b[i]);
    return f.tail() ? f.tail()->poly(Rational(0)) : Rational(0);
  };
  if (f.head()(b.front()) != right_value(0)) {
    throw InvalidGrowthFunction("growth function is discontinuous", b.front());
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (f.pieces()[i](b[i + 1]) != right_value(i + 1)) {
      throw InvalidGrowthFunction("growth function is discontinuous", b[i + 1]);
    }
  }
  if (nonnegative) {
    if (f.head()(b.front()) < 0) throw InvalidGrowthFunction("growth function is negative", b.front());
    for (std::size_t i = 0; i < m; ++i) {
      if (!nonnegative_on(f.pieces()[i], b[i], b[i + 1])) {
        throw InvalidGrowthFunction("growth function is negative", b[i]);
      }
    }
    if (f.tail() && !nonnegative_on_ray(f.tail()->poly, Rational(0))) {
      throw InvalidGrowthFunction("growth function is negative", b.back());
    }
  }
  return GrowthFunction(f, nonnegative);
}

Number integrate_against(const PiecewisePoly& f, const Polynomial& w, const Rational& lo,
                         const std::optional<Rational>& hi) {
  const auto& b = f.breakpoints();
  Number total = Rational(0);
  auto clip_poly = [&](const Polynomial& p, const std::optional<Rational>& a, const std::optional<Rational>& c) {
    const Rational l = a ? std::max(*a, lo) : lo;
    if (!c && !hi) {
      if (!(p * w).is_zero()) throw InvalidArgument("integrate_against: divergent polynomial integral");
      return;
    }
    const Rational r = c && hi ? std::min(*c, *hi) : (c ? *c : *hi);
    if (l < r) total += integrate(p * w, l, r);
  };
  clip_poly(f.head(), std::nullopt, b.front());
  for (std::size_t i = 0; i < f.pieces().size(); ++i) clip_poly(f.pieces()[i], b[i], b[i + 1]);
  if (f.tail()) {
    const Rational anchor = b.back();
    const Rational l = std::max(lo, anchor);
    if (!hi || l < *hi) {
      const Polynomial r = f.tail()->poly * w.shifted(anchor);
      std::optional<Rational> upper;
      if (hi) upper = *hi - anchor;
      total += exp_poly_integral(r, f.tail()->lambda, l - anchor, upper);
    }
  }
  return total;
}

Number moment(const PiecewisePoly& f, std::size_t k) {
  return integrate_against(f, Polynomial::monomial(1, k), Rational(0), std::nullopt);
}

PsiFunction psi_from_zeta(const PiecewisePoly& zeta, std::size_t n) {
  if (n == 0) throw InvalidArgument("psi_from_zeta: n must be positive");
  const auto& b = zeta.breakpoints();
  const std::size_t m = zeta.pieces().size();
  const Rational nn(static_cast<long>(n));

  Polynomial tail_part;  // contribution of [b_m, inf) for t <= b_m
  std::optional<ExpTail> psi_tail;
  if (const auto& tail = zeta.tail()) {
    const Rational& lam = tail->lambda;
    const auto& p = tail->poly.coeffs();
    const Polynomial gap(std::vector<Rational>{b.back(), Rational(-1)});
    for (std::size_t k = 0; k < n; ++k) {
      Rational mk = 0;
      for (std::size_t j = 0; j < p.size(); ++j) mk += p[j] * factorial(k + j) / pow_int(lam, k + j + 1);
      tail_part = tail_part + (binomial(n - 1, k) * mk) * power(gap, n - 1 - k);
    }
    std::vector<Rational> q(p.size(), Rational(0));
    for (std::size_t j = 0; j < p.size(); ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        q[i] += nn * p[j] * binomial(j, i) * factorial(n - 1 + j - i) / pow_int(lam, n + j - i);
      }
    }
    psi_tail = ExpTail{lam, Polynomial(std::move(q))};
  }

  std::vector<Polynomial> suffix(m + 1);
  suffix[m] = tail_part;
  for (std::size_t i = m; i-- > 0;) {
    suffix[i] = suffix[i + 1] + kernel_integral(zeta.pieces()[i], n, {false, b[i]}, {false, b[i + 1]});
  }
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i < m; ++i) {
    pieces.push_back(nn * (kernel_integral(zeta.pieces()[i], n, {true, 0}, {false, b[i + 1]}) + suffix[i + 1]));
  }
  Polynomial head = nn * (kernel_integral(zeta.head(), n, {true, 0}, {false, b.front()}) + suffix[0]);
  return PsiFunction(b, std::move(head), std::move(pieces), std::move(psi_tail));
}

PiecewisePoly signed_scaled_derivative(const PiecewisePoly& psi, std::size_t n) {
  PiecewisePoly d = psi;
  for (std::size_t i = 0; i < n; ++i) d = d.derivative();
  const Rational sign = n % 2 == 0 ? 1 : -1;
  return d.scaled(sign / factorial(n));
}

}  // namespace convval
