#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"

#include "convval/conjugacy.hpp"
#include "convval/errors.hpp"
#include "support.hpp"

using namespace convval;
using testsupport::ivec;
using testsupport::q;
using testsupport::vec;

namespace {

HRep whole(std::size_t n) { return HRep{n, {}, false}; }

Polyhedron cube(std::size_t n, long lo, long hi) {
  return Polyhedron::box(Vec(n, Rational(lo)), Vec(n, Rational(hi)));
}

PwaConvex scaled_l1(std::size_t n, const Rational& c, const Rational& d) {
  std::vector<AffinePiece> ps;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1 ? -c : c;
    ps.push_back({a, d});
  }
  return PwaConvex::make(ps, whole(n));
}

PwaConvex random_box_function(std::mt19937_64& rng, std::size_t n) {
  std::vector<AffinePiece> ps;
  const std::size_t count = 1 + rng() % 4;
  for (std::size_t k = 0; k < count; ++k) {
    Vec a(n);
    for (auto& c : a) c = Rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 2);
    ps.push_back({a, Rational(static_cast<long>(rng() % 5) - 2)});
  }
  Vec lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = -Rational(1 + static_cast<long>(rng() % 2));
    hi[i] = Rational(1 + static_cast<long>(rng() % 3), 2);
  }
  return PwaConvex::make(ps, Polyhedron::box(lo, hi).hrep());
}

double eval_double(const PwaConvex& u, const std::vector<double>& x) {
  double best = -INFINITY;
  for (const auto& p : u.pieces()) {
    double s = to_double(p.intercept);
    for (std::size_t i = 0; i < x.size(); ++i) s += to_double(p.slope[i]) * x[i];
    best = std::max(best, s);
  }
  return best;
}

double ternary(double lo, double hi, const std::function<double(double)>& f) {
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (f(m1) < f(m2)) hi = m2;
    else lo = m1;
  }
  return f(0.5 * (lo + hi));
}

// Brute-force Moreau value on a box domain by nested ternary search.
double moreau_oracle(const PwaConvex& u, double t, const std::vector<double>& x) {
  const auto& verts = u.domain().vrep().vertices;
  const std::size_t n = x.size();
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  for (const auto& v : verts) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], to_double(v[i]));
      hi[i] = std::max(hi[i], to_double(v[i]));
    }
  }
  auto obj = [&](const std::vector<double>& y) {
    double d = 0;
    for (std::size_t i = 0; i < n; ++i) d += (x[i] - y[i]) * (x[i] - y[i]);
    return eval_double(u, y) + d / (2 * t);
  };
  if (n == 1) return ternary(lo[0], hi[0], [&](double a) { return obj({a}); });
  return ternary(lo[0], hi[0], [&](double a) {
    return ternary(lo[1], hi[1], [&](double b) { return obj({a, b}); });
  });
}

}  // namespace

TEST_CASE("conjugates of standard functions") {
  const PwaConvex ind = indicator_function(cube(2, -1, 1), 0);
  CHECK(conjugate(ind) == scaled_l1(2, 1, 0));
  const PwaConvex sup_norm = cone_function(cube(2, -1, 1), 0);
  VRep cross{2, {ivec({1, 0}), ivec({-1, 0}), ivec({0, 1}), ivec({0, -1})}, {}, {}, false};
  CHECK(conjugate(sup_norm) == indicator_function(Polyhedron::from_vrep(cross), 0));
  for (int x = -4; x <= 4; ++x) {
    for (int y = -4; y <= 4; ++y) {
      const Vec p{Rational(x, 3), Rational(y, 3)};
      const bool inside = abs(p[0]) + abs(p[1]) <= 1;
      CHECK(conjugate(sup_norm).eval(p).finite == inside);
    }
  }
  const Rational c = q("3/2"), d = q("-2/5");
  CHECK(conjugate(scaled_l1(3, c, d)) == indicator_function(Polyhedron::box(Vec(3, -c), Vec(3, c)), -d));
}

TEST_CASE("biconjugation") {
  CHECK(biconjugate_check(cone_function(cube(2, -1, 1), 0)));
  CHECK(biconjugate_check(indicator_function(cube(2, 0, 1), 5)));
  const PwaConvex seg = indicator_function(Polyhedron::from_vrep(VRep{2, {ivec({0, 0}), ivec({1, 0})}, {}, {}, false}), 0);
  const ClosedPwa star = conjugate(seg);
  CHECK_FALSE(star.is_coercive());
  CHECK(star.epigraph().vrep().lines.size() == 1);
  CHECK(conjugate(star) == seg);
}

TEST_CASE("infimal convolution") {
  const Polyhedron k = cube(2, 0, 1);
  const Polyhedron l = Polyhedron::from_vrep(VRep{2, {ivec({0, 0}), ivec({2, 1})}, {}, {}, false});
  CHECK(inf_convolution(indicator_function(k, 0), indicator_function(l, 0)) ==
        indicator_function(minkowski_sum(k, l), 0));
  const PwaConvex u = scaled_l1(2, 2, 1);
  CHECK(inf_convolution(u, indicator_function(Polyhedron::point(zeros(2)), 0)) == u);
  const PwaConvex v = cone_function(cube(2, -1, 1), 0);
  const ClosedPwa lhs = conjugate(inf_convolution(u, v));
  const ClosedPwa cu = conjugate(u), cv = conjugate(v);
  for (int x = -3; x <= 3; ++x) {
    for (int y = -3; y <= 3; ++y) {
      const Vec p{Rational(x, 2), Rational(y, 2)};
      const Extended a = cu.eval(p), b = cv.eval(p);
      const Extended sum = a.finite && b.finite ? Extended::of(a.value + b.value) : Extended::infinity();
      CHECK(lhs.eval(p) == sum);
    }
  }
  CHECK(inf_convolution(u, v) == inf_convolution(v, u));
}

TEST_CASE("epi-scaling") {
  const PwaConvex u = scaled_l1(2, 1, 1);
  CHECK(epi_scale(u, 1) == u);
  const PwaConvex l = cone_function(cube(2, 0, 1), 0);
  CHECK(sublevel(epi_scale(l, 2), 2) == dilate(sublevel(l, 1), 2));
  CHECK_THROWS_AS(epi_scale(u, 0), InvalidArgument);
  const Rational t = q("5/3");
  const ClosedPwa lhs = conjugate(epi_scale(u, t));
  const ClosedPwa rhs = conjugate(u);
  for (int x = -2; x <= 2; ++x) {
    const Vec p{Rational(x, 2), Rational(1, 3)};
    const Extended a = lhs.eval(p), b = rhs.eval(p);
    CHECK(a.finite == b.finite);
    if (a.finite) CHECK(a.value == t * b.value);
  }
}

TEST_CASE("moreau envelope") {
  const PwaConvex origin = indicator_function(Polyhedron::point(zeros(2)), 0);
  CHECK(moreau_eval(origin, q("1/3"), vec({"1", "-2"})) == q("15/2"));
  const PwaConvex abs1 = PwaConvex::make({{ivec({1}), 0}, {ivec({-1}), 0}}, whole(1));
  const Rational t = q("3/4");
  for (const char* s : {"-3", "-3/4", "-1/2", "0", "1/3", "3/4", "5/2"}) {
    const Rational x = q(s);
    const Rational expect = abs(x) <= t ? x * x / (2 * t) : abs(x) - t / 2;
    CHECK(moreau_eval(abs1, t, Vec{x}) == expect);
  }
  CHECK_THROWS_AS(moreau_eval(abs1, t, Vec{Rational(1)}, 1), BudgetExceeded);
  CHECK_THROWS_AS(moreau_eval(abs1, 0, Vec{Rational(1)}), InvalidArgument);
}

TEST_CASE("property: moreau agrees with brute force and stays below u") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const PwaConvex u = random_box_function(rng, n);
    const Rational t(1 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3));
    for (int s = 0; s < 3; ++s) {
      Vec x(n);
      std::vector<double> xd(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = Rational(static_cast<long>(rng() % 13) - 6, 3);
        xd[i] = to_double(x[i]);
      }
      const Rational exact = moreau_eval(u, t, x);
      CHECK(std::abs(to_double(exact) - moreau_oracle(u, to_double(t), xd)) < 1e-9);
      if (u.eval(x).finite) CHECK(exact <= u.eval(x).value);
    }
  }
}

TEST_CASE("property: conjugation reverses order and is an involution") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2;
    const PwaConvex u = random_box_function(rng, n);
    const PwaConvex v = add_constant(sup(u, scaled_l1(n, 1, -3)), Rational(1, 2));
    REQUIRE(pointwise_leq(u, v));
    CHECK(biconjugate_check(u));
    const ClosedPwa cu = conjugate(u), cv = conjugate(v);
    for (int k = 0; k < 10; ++k) {
      const Vec p{Rational(static_cast<long>(rng() % 9) - 4, 2), Rational(static_cast<long>(rng() % 9) - 4, 3)};
      const Extended a = cu.eval(p), b = cv.eval(p);
      CHECK(a.finite);
      if (b.finite) CHECK(a.value >= b.value);
    }
    const PwaConvex w = scaled_l1(n, 1, 0);
    CHECK(inf_convolution(inf_convolution(u, v), w) == inf_convolution(u, inf_convolution(v, w)));
  }
}

TEST_CASE("cone bounds") {
  const PwaConvex u = cone_function(cube(2, -1, 1), 0);
  const ConeBound c = cone_bound(u);
  CHECK(c.a > 0);
  CHECK(to_double(c.a) <= 1 / std::sqrt(2.0));
  CHECK(certify_cone_bound(u, c));
  const ConeBound c10 = cone_bound(add_constant(u, 10));
  CHECK(c10.a == c.a);
  CHECK(c10.b == c.b + 10);
  CHECK(uniform_cone_bound({u}) == c);
  const ConeBound all = uniform_cone_bound({u, add_constant(u, 1), add_constant(u, 2)});
  CHECK(all == c);
  CHECK_FALSE(certify_cone_bound(u, ConeBound{c.a, Rational(0)}));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const PwaConvex f = random_box_function(rng, 2);
    CHECK(certify_cone_bound(f, cone_bound(f)));
  }
}
