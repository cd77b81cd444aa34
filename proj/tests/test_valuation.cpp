#include <cmath>
#include <random>

#include "doctest.h"

#include "convval/conjugacy.hpp"
#include "convval/errors.hpp"
#include "convval/valuation.hpp"
#include "support.hpp"

using namespace convval;
using testsupport::ivec;
using testsupport::q;

namespace {

Polynomial poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.push_back(Rational(x));
  return Polynomial(v);
}

PiecewisePoly box_zeta() { return PiecewisePoly({0, 1}, {}, {poly({1})}, std::nullopt); }
GrowthFunction hat() { return GrowthFunction::make({0, 1}, 1, {poly({1, -1})}, std::nullopt, true); }
GrowthFunction tent() {
  return GrowthFunction::make({0, 1, 2}, 0, {poly({0, 1}), poly({2, -1})}, std::nullopt, true);
}
GrowthFunction exp_decay() { return GrowthFunction::make({0}, 1, {}, ExpTail{1, poly({1})}, true); }

Polyhedron square() { return Polyhedron::box(ivec({0, 0}), ivec({1, 1})); }

Polyhedron random_p0(std::mt19937_64& rng, std::size_t n) {
  VRep v{n, {zeros(n)}, {}, {}, false};
  for (std::size_t k = 0; k < n + 1; ++k) {
    Vec x(n);
    for (auto& c : x) c = Rational(static_cast<long>(rng() % 7) - 2, 1 + rng() % 2);
    v.vertices.push_back(x);
  }
  for (std::size_t i = 0; i < n; ++i) v.vertices.push_back(unit_vector(n, i));
  return Polyhedron::from_vrep(v);
}

}  // namespace

TEST_CASE("level volume profiles") {
  const auto gauge = level_volume_profile(cone_function(square(), 0));
  CHECK(gauge.atom == 0);
  CHECK(gauge.t_min == 0);
  CHECK(gauge.final == poly({0, 0, 1}));
  const auto ind = level_volume_profile(indicator_function(square(), 3));
  CHECK(ind.atom == 1);
  CHECK(ind.t_min == 3);
  CHECK(ind.final == poly({1}));
  CHECK(ind.volume_at(2) == 0);
  const auto sup = level_volume_profile(cone_function(Polyhedron::box(ivec({-1, -1}), ivec({1, 1})), 0));
  CHECK(sup.final == poly({0, 0, 4}));
}

TEST_CASE("integral valuations") {
  CHECK(integral_valuation(hat(), indicator_function(square(), q("1/4"))) == Number(q("3/4")));
  CHECK(integral_valuation(box_zeta(), cone_function(square(), 0)) == Number(Rational(1)));
  CHECK(integral_valuation(hat(), cone_function(square(), 0)) == Number(q("1/3")));
  const Number e = integral_valuation(exp_decay(), cone_function(square(), 0));
  CHECK(e.is_exact());
  CHECK(e == Number(Rational(2)));
}

TEST_CASE("minimum and combined valuations") {
  const PwaConvex ind = indicator_function(square(), 3);
  const PiecewisePoly ramp({0, 5}, {}, {poly({0, 1})}, std::nullopt);
  CHECK(min_valuation(ramp, ind) == Number(Rational(3)));
  const Mat shear{ivec({1, 2}), ivec({0, 1})};
  const PwaConvex l = cone_function(square(), 1);
  CHECK(min_valuation(ramp, transform(l, shear, ivec({3, -1}), 0)) == min_valuation(ramp, l));
  CHECK(min_valuation(ramp, add_constant(l, q("1/2"))) == ramp(q("3/2")));

  const Rational t = q("1/3");
  const Polyhedron p = Polyhedron::from_vrep(VRep{2, {ivec({0, 0}), ivec({2, 0}), ivec({0, 1})}, {}, {}, false});
  CHECK(combined_valuation(ramp, tent(), indicator_function(p, t)) ==
        ramp(t) + tent()(t) * Number(volume(p)));
  const Polyhedron origin = Polyhedron::point(zeros(2));
  CHECK(combined_valuation(ramp, tent(), cone_function(origin, t)) == ramp(t));
}

TEST_CASE("two-path identity: cone functions against psi") {
  std::mt19937_64 rng(21);
  const std::vector<PiecewisePoly> zetas{box_zeta(), hat(), tent(), exp_decay()};
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const Polyhedron p = random_p0(rng, n);
    const Rational t(static_cast<long>(rng() % 7) - 3, 2);
    for (const auto& z : zetas) {
      const Number lhs = integral_valuation(z, cone_function(p, t));
      const Number rhs = Number(volume(p)) * psi_from_zeta(z, n)(t);
      if (lhs.is_exact() && rhs.is_exact()) CHECK(lhs == rhs);
      else CHECK(abs_difference(lhs, rhs) < 1e-10);
    }
    const Number m = integral_valuation(tent(), cone_function(p, 0));
    CHECK(m == Number(volume(p)) * Number(Rational(static_cast<long>(n))) * moment(tent(), n - 1));
  }
}

TEST_CASE("growth relations") {
  CHECK(check_derivative_relation(box_zeta(), 2).pass);
  CHECK(check_derivative_relation(PiecewisePoly(), 3).pass);
  CHECK(check_psi_vanishes(box_zeta(), 2).pass);
  CHECK(check_psi_vanishes(PiecewisePoly(), 2).pass);
  const PiecewisePoly far({5, 6}, {}, {poly({-5, 1}) * poly({6, -1})}, std::nullopt);
  CHECK(check_psi_vanishes(far, 3).pass);
  const auto r = check_moment_finiteness_of_derivative(psi_from_zeta(box_zeta(), 2), 2, box_zeta());
  CHECK(r.pass);
  CHECK(r.left == Number(q("1/2")));
  CHECK(check_moment_finiteness_of_derivative(PsiFunction(), 2).left == Number(Rational(0)));
}

TEST_CASE("growth extraction") {
  const PiecewisePoly z0({-1, 2}, {}, {poly({1, 1})}, std::nullopt);
  const ValuationFn z = [&](const PwaConvex& u) { return combined_valuation(z0, tent(), u); };
  std::vector<Rational> grid{q("-1/2"), q(0), q("1/3"), q(1), q("3/2")};
  const auto g = extract_growth(z, 2, grid);
  const PsiFunction psi = psi_from_zeta(tent(), 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(g.psi0[i] == z0(grid[i]));
    CHECK(g.psin[i] == psi(grid[i]));
  }
  const auto zero = extract_growth([](const PwaConvex&) { return Number(Rational(0)); }, 2, grid);
  for (const auto& v : zero.psin) CHECK(v == Number(Rational(0)));
}

TEST_CASE("monte carlo oracle") {
  const PwaConvex ind = indicator_function(square(), 0);
  const McEstimate a = mc_oracle(box_zeta(), ind, 20000, 1);
  CHECK(std::abs(a.estimate - 1.0) < 1e-12);
  const PwaConvex l = cone_function(square(), 0);
  const McEstimate b = mc_oracle(box_zeta(), l, 200000, 2, Rational(1));
  CHECK(std::abs(b.estimate - 1.0) <= 3 * b.std_error);
  const McEstimate c = mc_oracle(box_zeta(), l, 200000, 2, Rational(1));
  CHECK(c.estimate == b.estimate);
  CHECK_THROWS_AS(mc_oracle(box_zeta(), l, 10, 1), UnboundedInput);
}

TEST_CASE("tail bounds") {
  const auto prof = level_volume_profile(cone_function(square(), 0));
  for (double eps : {1e-2, 1e-4}) {
    const TailBound tb = tail_bound(exp_decay(), prof, eps);
    CHECK(std::abs(tb.tail_at_t0.to_double()) < eps);
    CHECK(std::abs(tail_integral(exp_decay(), prof, tb.t0 + 5).to_double()) < eps);
  }
  const TailBound compact = tail_bound(tent(), prof, 1e-4);
  CHECK(compact.t0 <= 2);
  CHECK(tail_integral(tent(), prof, Rational(2)) == Number(Rational(0)));
}
