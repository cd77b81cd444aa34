#include "convval/polynomial.hpp"

#include <algorithm>
#include <optional>

#include "convval/errors.hpp"

namespace convval {

namespace {

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return (1 / p.leading()) * p;
}

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    const auto rem = divmod(chain[chain.size() - 2], chain.back()).second;
    if (rem.is_zero()) break;
    chain.push_back(-rem);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

std::size_t variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t variations_at(const std::vector<Polynomial>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& p : chain) s.push_back(sign_of(p(x)));
  return variations(s);
}

std::size_t variations_at_infinity(const std::vector<Polynomial>& chain) {
  std::vector<int> s;
  for (const auto& p : chain) s.push_back(sign_of(p.leading()));
  return variations(s);
}

// Product of the odd-multiplicity factors: the points where p changes sign.
Polynomial sign_change_part(const Polynomial& p) {
  Polynomial out = Polynomial::constant(1);
  const auto f = squarefree_factors(p);
  for (std::size_t i = 0; i < f.size(); i += 2) out = out * f[i];
  return out;
}

Polynomial divide_out_root(const Polynomial& p, const Rational& r) {
  return divmod(p, Polynomial(std::vector<Rational>{-r, Rational(1)})).first;
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return Polynomial(std::move(v));
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Polynomial::eval_double(double t) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + to_double(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (c_.empty()) return {};
  std::vector<Rational> a(c_.size() + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
  return Polynomial(std::move(a));
}

Polynomial Polynomial::shifted(const Rational& c) const {
  // Horner in the polynomial ring: p(t + c) = (...(a_d (t+c) + a_{d-1})(t+c) ...).
  const Polynomial lin(std::vector<Rational>{c, Rational(1)});
  Polynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
  return acc;
}

Polynomial Polynomial::operator-() const { return Rational(-1) * *this; }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  std::vector<Rational> r = p.c_;
  for (auto& x : r) x *= s;
  return Polynomial(std::move(r));
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const Rational& c = p.coeffs()[i];
    if (c == 0) continue;
    if (!out.empty()) out += c > 0 ? " + " : " - ";
    else if (c < 0) out += "-";
    out += to_string(abs(c));
    if (i >= 1) out += "*t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

Rational integrate(const Polynomial& p, const Rational& a, const Rational& b) {
  const Polynomial f = p.antiderivative();
  return f(b) - f(a);
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InvalidArgument("divmod: division by the zero polynomial");
  std::vector<Rational> rem = a.coeffs();
  const auto& d = b.coeffs();
  if (rem.size() < d.size()) return {Polynomial(), a};
  std::vector<Rational> quo(rem.size() - d.size() + 1, Rational(0));
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Rational f = rem[k + d.size() - 1] / d.back();
    quo[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] -= f * d[j];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

std::vector<Polynomial> squarefree_factors(const Polynomial& p) {
  std::vector<Polynomial> out;
  if (p.degree() < 1) return out;
  const Polynomial f = monic(p);
  const Polynomial df = f.derivative();
  const Polynomial a0 = gcd(f, df);
  Polynomial b = divmod(f, a0).first;
  Polynomial c = divmod(df, a0).first;
  Polynomial d = c - b.derivative();
  while (b.degree() >= 1) {
    const Polynomial a = gcd(b, d);
    out.push_back(a);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

std::size_t count_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw InvalidArgument("count_roots: zero polynomial");
  if (!(a < b)) return 0;
  Polynomial q = p.degree() >= 1 ? divmod(p, gcd(p, p.derivative())).first : p;
  if (q.degree() < 1) return 0;
  if (q(a) == 0) q = divide_out_root(q, a);
  if (q(b) == 0) q = divide_out_root(q, b);
  if (q.degree() < 1) return 0;
  const auto chain = sturm_chain(q);
  return variations_at(chain, a) - variations_at(chain, b);
}

std::size_t count_roots_above(const Polynomial& p, const Rational& a) {
  if (p.is_zero()) throw InvalidArgument("count_roots_above: zero polynomial");
  Polynomial q = p.degree() >= 1 ? divmod(p, gcd(p, p.derivative())).first : p;
  if (q.degree() < 1) return 0;
  if (q(a) == 0) q = divide_out_root(q, a);
  if (q.degree() < 1) return 0;
  const auto chain = sturm_chain(q);
  return variations_at(chain, a) - variations_at_infinity(chain);
}

bool nonnegative_on(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) return true;
  if (p(a) < 0 || p(b) < 0) return false;
  if (!(a < b)) return true;
  const Polynomial s = sign_change_part(p);
  if (s.degree() >= 1 && count_roots(s, a, b) > 0) return false;
  // No sign change inside: any nonzero interior value fixes the sign.
  const std::size_t probes = static_cast<std::size_t>(p.degree()) + 2;
  for (std::size_t k = 1; k <= probes; ++k) {
    const Rational x = a + (b - a) * Rational(static_cast<long>(k), static_cast<long>(probes + 1));
    const Rational v = p(x);
    if (v != 0) return v > 0;
  }
  return true;
}

bool nonnegative_on_ray(const Polynomial& p, const Rational& a) {
  if (p.is_zero()) return true;
  if (p(a) < 0 || p.leading() < 0) return false;
  const Polynomial s = sign_change_part(p);
  return s.degree() < 1 || count_roots_above(s, a) == 0;
}

Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw DimensionMismatch("interpolate: size mismatch");
  const std::size_t m = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      if (xs[i] == xs[i - level]) throw InvalidArgument("interpolate: repeated node");
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    }
  }
  Polynomial acc;
  for (std::size_t k = m; k-- > 0;) {
    acc = acc * Polynomial(std::vector<Rational>{-xs[k], Rational(1)}) + Polynomial::constant(dd[k]);
  }
  return acc;
}

Rational binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Rational r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= Rational(static_cast<long>(n - k + i));
    r /= Rational(static_cast<long>(i));
  }
  return r;
}

Rational factorial(std::size_t n) {
  Rational r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= Rational(static_cast<long>(i));
  return r;
}

}  // namespace convval
