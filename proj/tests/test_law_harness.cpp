#include "doctest.h"

#include <chrono>

#include "convval/errors.hpp"
#include "convval/law_harness.hpp"
#include "support.hpp"

using namespace convval;
using testsupport::q;
using testsupport::vec;

namespace {

Polyhedron cube(std::size_t n) { return Polyhedron::box(zeros(n), Vec(n, Rational(1))); }

PiecewisePoly box_zeta() {
  return PiecewisePoly({0, 1}, Polynomial::constant(1), {Polynomial::constant(1)}, std::nullopt);
}

}  // namespace

TEST_CASE("generated pairs are certified and meet at the base") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const FixturePair p = generate_pair_with_convex_min(seed, n);
      CHECK(p.certified);
      const PwaConvex meet = inf_if_convex(p.u, p.v);
      CHECK(pointwise_leq(meet, p.u));
      CHECK(pointwise_leq(meet, p.v));
      const FixturePair again = generate_pair_with_convex_min(seed, n);
      CHECK(again.u == p.u);
      CHECK(again.v == p.v);
      CHECK(check_min_lattice(p, seed).pass);
    }
  }
  CHECK_THROWS_AS(generate_pair_with_convex_min(0, 5), InvalidArgument);
}

TEST_CASE("valuation identity on generated pairs") {
  const GrowthFunction z0 = random_compact_zeta(1);
  const GrowthFunction zn = random_compact_zeta(2);
  const ValuationFn z = [&](const PwaConvex& u) { return combined_valuation(z0, zn, u); };
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FixturePair p = generate_pair_with_convex_min(seed, 2);
    const LawReport r = check_valuation_identity(z, p, seed);
    CHECK(r.pass);
    CHECK(r.left.is_exact());
    CHECK(r.tolerance == 0.0);
  }
  const FixturePair p = generate_pair_with_convex_min(3, 2);
  FixturePair same{p.u, p.u, true, "same"};
  CHECK(check_valuation_identity(z, same).pass);
  CHECK(check_valuation_identity([](const PwaConvex&) { return Number(Rational(7)); }, p).pass);
  FixturePair bad = p;
  bad.certified = false;
  CHECK_THROWS_AS(check_valuation_identity(z, bad), InvalidArgument);
}

TEST_CASE("min lattice on indicator pair") {
  const PwaConvex a = indicator_function(cube(2), 0);
  const PwaConvex b = indicator_function(cube(2), 1);
  const FixturePair p{a, b, true, "shifted"};
  CHECK(check_min_lattice(p).pass);
  CHECK(check_min_lattice(p).left == Number(Rational(1)));
}

TEST_CASE("truncation fixture identities") {
  for (std::size_t n : {2, 3}) {
    for (const char* s : {"1/2", "1", "2"}) {
      const TruncationFixture f = truncation_fixture(n, q(s));
      CHECK(volume(f.q) == 0);
      const std::vector<Rational> lv{q(0), q("1/2"), q(1), q("3/2"), q(5)};
      CHECK(check_truncation_levels(f, lv).pass);
      const PiecewisePoly zeta = box_zeta();
      const Number l = integral_valuation(zeta, f.u_s) + integral_valuation(zeta, f.l_p_s);
      const Number r = integral_valuation(zeta, f.l_p) + integral_valuation(zeta, f.l_q_s);
      CHECK(l == r);
    }
  }
  CHECK_THROWS_AS(truncation_fixture(2, q(0)), InvalidArgument);
  CHECK_THROWS_AS(truncation_fixture(1, q(1)), InvalidArgument);
}

TEST_CASE("staircase fixtures") {
  const std::vector<Rational> h{q("1/2"), q(2)};
  const PwaConvex u0 = staircase_fixture(2, h, 0);
  const Polyhedron ph = Polyhedron::from_vrep(VRep{2, {zeros(2), vec({"2", "0"}), vec({"0", "1/2"})}, {}, {}, false});
  CHECK(u0 == cone_function(ph, 0));
  CHECK(staircase_fixture(2, h, 2) == indicator_function(cube(2), 0));
  staircase_fixture(2, h, 1);
  CHECK_THROWS_AS(staircase_fixture(2, h, 3), InvalidArgument);
  CHECK_THROWS_AS(staircase_fixture(2, {q(1)}, 0), InvalidArgument);

  std::vector<Rational> hs;
  for (int j = 1; j <= 8; ++j) hs.push_back(Rational(1, 1L << j));
  const StaircaseResult r = staircase_limit_check(box_zeta(), 1, q("1/2"), hs);
  CHECK(r.pass());
  for (const auto& x : r.quotients) CHECK(x == Number(Rational(1)));
  const StaircaseResult z = staircase_limit_check(PiecewisePoly(), 2, q("1/2"), hs);
  CHECK(z.pass());
  for (const auto& x : z.quotients) CHECK(x == Number(Rational(0)));
  const GrowthFunction smooth = GrowthFunction::make({q(0), q(2)}, q(4),
      {Polynomial({q(4), q(-4), q(1)})}, std::nullopt);
  for (std::size_t k : {1, 2}) {
    const StaircaseResult s = staircase_limit_check(smooth, k, q("1/4"), hs);
    CHECK(s.pass());
    CHECK(s.order > 0.9);
    CHECK(s.order < 1.1);
  }
}

TEST_CASE("smoothing sequence and level convergence") {
  const PwaConvex u = indicator_function(cube(2), 0);
  const Polyhedron k = Polyhedron::box(Vec(2, q(-1)), Vec(2, q(1)));
  std::vector<PwaConvex> seq;
  for (long j = 1; j <= 64; j *= 2) seq.push_back(smoothing_sequence(u, k, Rational(j)));
  for (const auto& s : seq) CHECK(pointwise_leq(s, u));
  const LevelConvergence lc = check_level_convergence(seq, u, {q(1), q(2)}, 1.0, true);
  CHECK(lc.report.pass);
  CHECK(lc.distances[0].back() < lc.distances[0].front());
  const LevelConvergence tight = check_level_convergence(seq, u, {q(1)}, 1e-6, true);
  CHECK_FALSE(tight.report.pass);
  const std::vector<PwaConvex> constant(4, u);
  const LevelConvergence c = check_level_convergence(constant, u, {q(1), q(-1)});
  CHECK(c.report.pass);
  for (double d : c.distances[0]) CHECK(d == 0.0);
  CHECK_THROWS_AS(smoothing_sequence(u, cube(2), q(1)), InvalidArgument);
}

TEST_CASE("invariance and conjugacy checks") {
  const GrowthFunction z0 = random_compact_zeta(5);
  const GrowthFunction zn = random_compact_zeta(6);
  const ValuationFn z = [&](const PwaConvex& u) { return combined_valuation(z0, zn, u); };
  for (const auto& f : fixture_corpus(2, 12, 4)) {
    CHECK(check_invariance(z, f.u, 2, 2, 9).pass);
    CHECK(check_biconjugation(f.u).pass);
    CHECK(check_cone_bound(f.u).pass);
  }
  const auto corpus = fixture_corpus(2, 6, 4);
  const auto pts = rational_grid(1, 2, 30);
  for (std::size_t j = 0; j + 1 < corpus.size(); ++j) {
    CHECK(check_inf_conv_conjugate(corpus[j].u, corpus[j + 1].u, pts).pass);
    CHECK(check_epi_scale_conjugate(corpus[j].u, q("2/3"), pts).pass);
  }
  CHECK(rational_grid(3, 3, 5) == rational_grid(3, 3, 5));
}

TEST_CASE("moreau checks") {
  CHECK(check_moreau_origin(2, q("1/2"), rational_grid(2, 2, 10)).pass);
  const PwaConvex u = indicator_function(cube(2), 0);
  CHECK(check_moreau_below(u, {q(1)}).pass);
  CHECK(check_moreau_monotone(cone_function(Polyhedron::box(Vec(2, q(-1)), Vec(2, q(1))), 0), vec({"1/3", "1/5"}),
                              {q("1/2"), q("1/4"), q("1/8")}).pass);
  CHECK_THROWS_AS(check_moreau_monotone(u, vec({"2", "0"}), {q(1)}), InvalidArgument);
}

TEST_CASE("growth-side checks") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const GrowthFunction zeta = random_compact_zeta(s);
    CHECK(zeta.support_sup().has_value());
    CHECK(check_moment_identity(zeta, random_origin_polytope(s, 2)).pass);
    CHECK(check_cone_two_path(random_compact_zeta(s + 9), zeta, random_origin_polytope(s, 3), q("1/3")).pass);
  }
  std::vector<PwaConvex> fx;
  for (const auto& f : fixture_corpus(2, 6, 1)) fx.push_back(f.u);
  CHECK(reduction_demonstration(random_compact_zeta(1), random_compact_zeta(2), fx, {q(0), q(1), q("5/2")}).pass);
}

TEST_CASE("suites are deterministic and thread-count independent") {
  CHECK_THROWS_AS(run_suite("nope", 1, 1), InvalidArgument);
  const auto a = run_suite("growth", 3, 2, 1);
  const auto b = run_suite("growth", 3, 2, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j].law == b[j].law);
    CHECK(a[j].digest == b[j].digest);
    CHECK(a[j].pass);
  }
  for (const auto& name : suite_names()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rs = run_suite(name, 11, 2);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE(name << ": " << rs.size() << " reports in " << secs << " s");
    for (const auto& r : rs) {
      INFO(name << " " << r.law << " " << r.witness);
      CHECK(r.pass);
    }
  }
}
