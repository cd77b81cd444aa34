// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "convval/errors.hpp"
#include "convval/law_harness.hpp"

using namespace convval;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Polyhedron cube(std::size_t n, const Rational& r) { return Polyhedron::box(Vec(n, -r), Vec(n, r)); }

Polynomial t_poly() { return Polynomial::monomial(Rational(1), 1); }

GrowthFunction exp_decay() {
  return GrowthFunction::make({Rational(0)}, Rational(1), {}, ExpTail{Rational(1), Polynomial::constant(1)}, true);
}

GrowthFunction tent() {
  return GrowthFunction::make({Rational(0), Rational(1)}, Rational(1), {Polynomial::constant(1) - t_poly()},
                              std::nullopt);
}

GrowthFunction quadratic_zeta() {
  const Polynomial two = Polynomial::constant(Rational(2));
  return GrowthFunction::make({Rational(0), Rational(2)}, Rational(4), {(two - t_poly()) * (two - t_poly())},
                              std::nullopt);
}

std::vector<Rational> halvings(int count) {
  std::vector<Rational> out;
  for (int j = 1; j <= count; ++j) out.push_back(Rational(1, 1L << j));
  return out;
}

Outcome tally(std::size_t passed, std::size_t total, const std::string& what, const std::string& first_failure) {
  std::string d = std::to_string(passed) + "/" + std::to_string(total) + " " + what;
  if (!first_failure.empty()) d += "; first failure: " + first_failure;
  return {passed == total, d};
}

struct Counter {
  std::size_t passed = 0;
  std::size_t total = 0;
  std::string failure;

  void add(bool ok, const std::string& where) {
    ++total;
    if (ok) ++passed;
    else if (failure.empty()) failure = where;
  }
  void add(const LawReport& r) {
    add(r.pass, r.law + " " + r.witness + " left=" + to_string(r.left) + " right=" + to_string(r.right));
  }
};

Outcome criterion1() {
  Counter c;
  std::vector<GrowthFunction> zetas{random_compact_zeta(101), random_compact_zeta(102), random_compact_zeta(103)};
  for (std::size_t n : {2, 3}) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const FixturePair pair = generate_pair_with_convex_min(s, n);
      for (const auto& z : zetas) {
        const LawReport r =
            check_valuation_identity([&](const PwaConvex& u) { return integral_valuation(z, u); }, pair, s);
        c.add(r.pass && r.tolerance == 0.0 && r.left.is_exact(), "n=" + std::to_string(n) + " seed " +
                                                                     std::to_string(s) + " " + r.witness);
      }
    }
  }
  return tally(c.passed, c.total, "exact identities", c.failure);
}

Outcome criterion2() {
  Counter c;
  const GrowthFunction z0 = random_compact_zeta(201);
  for (std::size_t n : {2, 3}) {
    for (const GrowthFunction& zn : {random_compact_zeta(202), tent()}) {
      const ValuationFn z = [&](const PwaConvex& u) { return combined_valuation(z0, zn, u); };
      const PsiFunction psi = psi_from_zeta(zn, n);
      for (const Rational& s : {Rational(1, 2), Rational(1), Rational(2), Rational(8), Rational(64)}) {
        const TruncationFixture f = truncation_fixture(n, s);
        const std::string where = "n=" + std::to_string(n) + " s=" + to_string(s);
        const Number us = z(f.u_s);
        const Number lp = z(f.l_p);
        const Number lhs = us + z(f.l_p_s);
        const Number rhs = lp + z(f.l_q_s);
        c.add(lhs.is_exact() && lhs == rhs, where + " identity");
        const Number predicted = z0(Rational(0)) + Number(volume(f.p)) * (psi(Rational(0)) - psi(s));
        c.add(us.is_exact() && us == predicted, where + " predicted value");
        c.add(volume(f.q) == 0, where + " V(Q)");
        if (s == 64) c.add(abs_difference(us, lp) < 1e-6, where + " gap " + format_double(abs_difference(us, lp)));
      }
    }
    // A non-compact zeta reaches the limit only asymptotically.
    const GrowthFunction e = exp_decay();
    const TruncationFixture f = truncation_fixture(n, Rational(64));
    const double gap = abs_difference(integral_valuation(e, f.u_s), integral_valuation(e, f.l_p));
    c.add(gap < 1e-6, "n=" + std::to_string(n) + " exp gap " + format_double(gap));
  }
  return tally(c.passed, c.total, "truncation checks", c.failure);
}

Outcome criterion3() {
  Counter c;
  const GrowthFunction z0 = random_compact_zeta(301);
  const GrowthFunction zn = random_compact_zeta(302);
  const ValuationFn z = [&](const PwaConvex& u) { return combined_valuation(z0, zn, u); };
  for (std::size_t n : {2, 3}) {
    const auto corpus = fixture_corpus(n, 11, 300);
    for (std::size_t idx : {0, 3, 4, 6, 9, 10}) {
      const auto& f = corpus[idx];
      const LawReport r = check_invariance(z, f.u, 50, 10, 300 + n);
      c.add(r.pass && r.tolerance == 0.0, f.name + " " + r.witness);
    }
  }
  return tally(c.passed, c.total, "fixtures invariant under 50 shears x 10 translations", c.failure);
}

Outcome criterion4() {
  Counter c;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const GrowthFunction zeta = random_compact_zeta(400 + s);
    for (std::size_t n : {2, 3}) {
      c.add(check_derivative_relation(zeta, n));
      c.add(check_psi_vanishes(zeta, n));
    }
  }
  return tally(c.passed, c.total, "symbolic growth checks", c.failure);
}

Outcome criterion5() {
  Counter c;
  const std::vector<GrowthFunction> zetas{random_compact_zeta(501), random_compact_zeta(502),
                                          random_compact_zeta(503), tent(), exp_decay()};
  for (std::size_t n : {2, 3}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Polyhedron p = random_origin_polytope(500 + s, n);
      for (const auto& z : zetas) {
        const LawReport r = check_moment_identity(z, p);
        c.add(r.pass && r.left.is_exact() && r.right.is_exact(), "n=" + std::to_string(n) + " P seed " +
                                                                     std::to_string(500 + s));
      }
    }
  }
  return tally(c.passed, c.total, "exact moment identities", c.failure);
}

Outcome criterion6() {
  Counter c;
  double worst_order = INFINITY, worst_error = 0.0;
  const GrowthFunction zeta = quadratic_zeta();
  for (std::size_t k : {1, 2}) {
    for (const Rational& t : {Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
      const StaircaseResult r = staircase_limit_check(zeta, k, t, halvings(8));
      for (const auto& rep : r.reports) c.add(rep);
      worst_order = std::min(worst_order, r.order);
      worst_error = std::max(worst_error, r.errors.back());
    }
  }
  return tally(c.passed, c.total,
               "staircase checks (min order " + format_double(worst_order) + ", max final error " +
                   format_double(worst_error) + ")",
               c.failure);
}

Outcome criterion7() {
  Counter c;
  for (std::size_t n : {2, 3}) {
    const auto corpus = fixture_corpus(n, 25, 700);
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      const auto& u = corpus[j].u;
      const auto& v = corpus[(j + 1) % corpus.size()].u;
      const auto points = rational_grid(700 + j, n, 100);
      c.add(check_biconjugation(u));
      c.add(check_inf_conv_conjugate(u, v, points));
      c.add(check_epi_scale_conjugate(u, Rational(1, 2), points));
      c.add(check_epi_scale_conjugate(u, Rational(3), points));
    }
  }
  return tally(c.passed, c.total, "conjugacy checks", c.failure);
}

std::vector<PwaConvex> smoothing_of(const PwaConvex& u, std::size_t n) {
  const Polyhedron k_steep = cube(n, Rational(1, 1048576));
  std::vector<PwaConvex> seq;
  for (long k = 1; k <= 1024; k *= 2) seq.push_back(smoothing_sequence(u, k_steep, Rational(k)));
  return seq;
}

std::vector<Rational> levels_for(const PwaConvex& u) {
  Rational top = min_value(u).t_min;
  for (const auto& v : u.epigraph().vrep().vertices) top = std::max(top, v.back());
  return {top + Rational(1, 2), top + 2};
}

Outcome criterion8() {
  Counter c;
  double worst = 0.0, worst_z = 0.0;
  const GrowthFunction zeta = random_compact_zeta(801);
  for (std::size_t n : {2, 3}) {
    for (const auto& f : bounded_corpus(n, 5, 800)) {
      const auto seq = smoothing_of(f.u, n);
      const LevelConvergence lc = check_level_convergence(seq, f.u, levels_for(f.u), 1e-6, true);
      c.add(lc.report.pass, f.name + " " + lc.report.witness);
      for (const auto& d : lc.distances) worst = std::max(worst, d.back());
      const double gap = abs_difference(integral_valuation(zeta, seq.back()), integral_valuation(zeta, f.u));
      worst_z = std::max(worst_z, gap);
      c.add(gap < 1e-6, f.name + " valuation gap " + format_double(gap));
      bool below = true;
      for (const auto& s : seq) below = below && pointwise_leq(s, f.u);
      c.add(below, f.name + " u_k <= u");
    }
  }
  return tally(c.passed, c.total,
               "convergence checks (max final distance " + format_double(worst) + ", max valuation gap " +
                   format_double(worst_z) + ")",
               c.failure);
}

Outcome criterion9() {
  Counter c;
  double worst = 0.0;
  const GrowthFunction zeta = random_compact_zeta(901);
  std::size_t j = 0;
  for (std::size_t n : {2, 3}) {
    for (const auto& f : bounded_corpus(n, 10, 900)) {
      const Number exact = integral_valuation(zeta, f.u);
      const McEstimate mc = mc_oracle(zeta, f.u, 1000000, 900 + j++);
      const double diff = std::abs(exact.to_double() - mc.estimate);
      const double allowed = 3 * mc.std_error + 1e-12 * std::max(1.0, std::abs(exact.to_double()));
      if (mc.std_error > 0) worst = std::max(worst, diff / mc.std_error);
      c.add(diff <= allowed, f.name + " |diff| " + format_double(diff) + " stderr " + format_double(mc.std_error));
    }
  }
  return tally(c.passed, c.total, "fixtures within 3 stderr (max " + format_double(worst) + " stderr)", c.failure);
}

Outcome criterion10() {
  Counter c;
  const auto ts = halvings(10);
  for (std::size_t n : {2, 3}) {
    c.add(check_moreau_origin(n, Rational(1, 3), rational_grid(1000 + n, n, 20)));
    c.add(check_moreau_origin(n, Rational(5, 2), rational_grid(1010 + n, n, 20)));
    for (const auto& f : bounded_corpus(n, 4, 1000)) {
      c.add(check_moreau_below(f.u, {Rational(1), Rational(1, 8)}));
      Vec centre = zeros(n);
      const auto& vs = f.u.domain().vrep().vertices;
      for (const auto& v : vs) centre = add(centre, v);
      centre = scale(centre, Rational(1, static_cast<long>(vs.size())));
      c.add(check_moreau_monotone(f.u, centre, ts));
    }
    const PwaConvex gauge = cone_function(cube(n, Rational(1)), 0);
    c.add(check_moreau_below(gauge, ts));
    c.add(check_moreau_monotone(gauge, Vec(n, Rational(1, 3)), ts));
  }
  return tally(c.passed, c.total, "Moreau checks", c.failure);
}

Outcome criterion11() {
  Counter c;
  for (std::size_t n : {2, 3}) {
    for (const auto& f : fixture_corpus(n, 25, 700)) c.add(check_cone_bound(f.u));
    for (const auto& f : bounded_corpus(n, 5, 800)) c.add(check_uniform_cone_bound(smoothing_of(f.u, n)));
  }
  return tally(c.passed, c.total, "cone bound certificates", c.failure);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"valuation law, exact", criterion1},
      {"truncation fixture identity", criterion2},
      {"SL(n) and translation invariance", criterion3},
      {"growth relation and vanishing", criterion4},
      {"moment identity", criterion5},
      {"staircase limit", criterion6},
      {"conjugacy laws", criterion7},
      {"convergence surrogates", criterion8},
      {"Monte Carlo agreement", criterion9},
      {"Moreau envelope", criterion10},
      {"cone bounds", criterion11},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("criterion %2zu %s: %s: %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
