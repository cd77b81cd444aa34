#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convval/conjugacy.hpp"
#include "convval/convex_function.hpp"
#include "convval/growth.hpp"
#include "convval/law_report.hpp"
#include "convval/valuation.hpp"

namespace convval {

/// Two functions whose pointwise minimum is convex when `certified`.
struct FixturePair {
  PwaConvex u;
  PwaConvex v;
  bool certified = false;
  std::string provenance;
};

/// Z(u ∨ v) + Z(u ∧ v) against Z(u) + Z(v). Exact values are compared with
/// zero tolerance, anything else with `tolerance`. Throws InvalidArgument
/// for an uncertified pair.
LawReport check_valuation_identity(const ValuationFn& z, const FixturePair& pair, std::uint64_t seed = 0,
                                   double tolerance = 0.0);

/// min(u ∨ v) = max(min u, min v) and, for a certified pair,
/// min(u ∧ v) = min(min u, min v). The report carries the first failing
/// comparison, else the one for u ∨ v. Throws EmptyDomain when u ∨ v is
/// identically +inf.
LawReport check_min_lattice(const FixturePair& pair, std::uint64_t seed = 0);

/// Random base w and a cut of its epigraph, either by a vertical hyperplane
/// (u = w + Ind{h <= c}, v = w + Ind{h >= c}) or by an affine graph
/// (u = w ∨ l, v = w + Ind{w <= l}). Either way u ∧ v = w. Deterministic
/// per seed; n in 1..4.
FixturePair generate_pair_with_convex_min(std::uint64_t seed, std::size_t n);

/// Random member of the coercive piecewise-affine class; bounded domain when
/// `bounded` is set.
PwaConvex random_pwa(std::uint64_t seed, std::size_t n, bool bounded);

/// Random continuous growth function with compact support in [0, 4],
/// piecewise polynomial of degree at most 3, constant below 0.
GrowthFunction random_compact_zeta(std::uint64_t seed);

/// Random polytope with 0 in its interior; vertices on a small grid.
Polyhedron random_origin_polytope(std::uint64_t seed, std::size_t n);

struct TruncationFixture {
  PwaConvex u_s;
  PwaConvex l_p;
  PwaConvex l_p_s;
  PwaConvex l_q_s;
  Polyhedron p;
  Polyhedron q;
};

/// P = conv{0, (e1+e2)/2, e2, ..., en} and Q = conv{0, e2, ..., en};
/// u_s = l_P + Ind{x1 <= s/2}, l_{K,s} = l_K(. - tau) + s with
/// tau = s (e1+e2)/2. The lattice identities u_s ∧ l_{P,s} = l_P and
/// u_s ∨ l_{P,s} = l_{Q,s} are checked on ten levels; a mismatch throws
/// std::logic_error. Throws InvalidArgument unless s > 0 and n >= 2.
TruncationFixture truncation_fixture(std::size_t n, const Rational& s);

/// The sublevel identities {u_s<=t} ∪ {l_{P,s}<=t} = {l_P<=t} and
/// {u_s<=t} ∩ {l_{P,s}<=t} = {l_{Q,s}<=t} at the given levels.
LawReport check_truncation_levels(const TruncationFixture& f, const std::vector<Rational>& levels);

/// u_i^h with sublevel sets [0,1]^i x conv{0, s e_{i+1}/h_{i+1}, ..., s e_k/h_k};
/// u_k^h is Ind_{[0,1]^k}. The formula is verified at five levels, a
/// mismatch throwing std::logic_error. Throws InvalidArgument for i > k,
/// a wrong number of steps, or a nonpositive step.
PwaConvex staircase_fixture(std::size_t k, const std::vector<Rational>& h, std::size_t i);

struct StaircaseResult {
  /// Two-path agreement, symbolic limit, order and final error, in that order.
  std::vector<LawReport> reports;
  std::vector<Rational> h;
  std::vector<Number> quotients;
  std::vector<double> errors;
  /// Least-squares slope of log error against log h; +inf when every
  /// error vanishes.
  double order = 0.0;

  bool pass() const;
};

/// For v = h x_k + Ind_{[0,1]^k} the engine value Z(v + t) must equal the
/// psi difference quotient ((-1)^k / k!) (psi^{(k-1)}(t+h) - psi^{(k-1)}(t)) / h
/// exactly, the signed scaled k-th derivative of psi at t must equal
/// zeta(t) exactly, and the quotients must approach zeta(t) with order at
/// least 0.9 and final error at most 1e-2.
StaircaseResult staircase_limit_check(const PiecewisePoly& zeta, std::size_t k, const Rational& t,
                                      const std::vector<Rational>& h_sequence);

/// u □ l_{K/k}; the cone steepens linearly in k. Throws InvalidArgument
/// unless 0 is interior to K and k >= 1.
PwaConvex smoothing_sequence(const PwaConvex& u, const Polyhedron& k_steep, const Rational& k);

struct LevelConvergence {
  LawReport report;
  /// distances[level][member]; +inf where exactly one side is empty.
  std::vector<std::vector<double>> distances;
};

/// Sublevel Hausdorff distances per level. Levels where {u <= t} is empty
/// pass once the last member's sublevel is empty too. Otherwise the
/// distances must be non-increasing (margin 1e-12) over the second half of
/// the sequence and end below `threshold`. With `strict` they must
/// decrease strictly along the whole sequence.
LevelConvergence check_level_convergence(const std::vector<PwaConvex>& sequence, const PwaConvex& u,
                                         const std::vector<Rational>& levels, double threshold = 1e-6,
                                         bool strict = false);

/// Z(transform(u, phi, tau, 0)) == Z(u) for `trials` random unimodular phi
/// and rational tau.
LawReport check_invariance(const ValuationFn& z, const PwaConvex& u, std::size_t trials, std::uint64_t seed);

/// Same with `shears` maps, each combined with `translations` shifts.
LawReport check_invariance(const ValuationFn& z, const PwaConvex& u, std::size_t shears, std::size_t translations,
                           std::uint64_t seed);

/// Seeded rational points with coordinates in [-3, 3] and denominator 4.
std::vector<Vec> rational_grid(std::uint64_t seed, std::size_t n, std::size_t count);

LawReport check_biconjugation(const ClosedPwa& u, std::uint64_t seed = 0);
/// (u □ v)* = u* + v* at each point.
LawReport check_inf_conv_conjugate(const PwaConvex& u, const PwaConvex& v, const std::vector<Vec>& points,
                                   std::uint64_t seed = 0);
/// (t u(./t))* = t u* at each point.
LawReport check_epi_scale_conjugate(const PwaConvex& u, const Rational& t, const std::vector<Vec>& points,
                                    std::uint64_t seed = 0);

/// e_t u <= u at every epigraph vertex, for every t given.
LawReport check_moreau_below(const PwaConvex& u, const std::vector<Rational>& ts, std::uint64_t seed = 0);
/// e_t Ind_{0}(x) = |x|^2 / (2t) at each point.
LawReport check_moreau_origin(std::size_t n, const Rational& t, const std::vector<Vec>& points);
/// |e_t u(x) - u(x)| non-increasing as t runs through `ts` (decreasing).
LawReport check_moreau_monotone(const PwaConvex& u, const Vec& x, const std::vector<Rational>& ts);

LawReport check_cone_bound(const PwaConvex& u, std::uint64_t seed = 0);
/// uniform_cone_bound of the members certified on each member.
LawReport check_uniform_cone_bound(const std::vector<PwaConvex>& us, std::uint64_t seed = 0);

/// Z_zeta(l_P) = V(P) n ∫_0^inf s^{n-1} zeta(s) ds.
LawReport check_moment_identity(const PiecewisePoly& zeta, const Polyhedron& p);

/// Z(l_P + t) = psi0(t) + V(P) psin(t) for Z = combined valuation, with
/// psi0 = zeta0 and psin from the kernel integral.
LawReport check_cone_two_path(const PiecewisePoly& zeta0, const PiecewisePoly& zetan, const Polyhedron& p,
                              const Rational& t);

/// Two valuations built along different routes (level integral and
/// integration by parts against the level-volume profile) are compared on
/// their extracted growth functions over `tgrid` and then on every
/// fixture. A demonstration on this family only.
LawReport reduction_demonstration(const GrowthFunction& zeta0, const GrowthFunction& zetan,
                                  const std::vector<PwaConvex>& fixtures, const std::vector<Rational>& tgrid);

struct NamedFixture {
  std::string name;
  PwaConvex u;
};

/// Hand-made functions (indicators, gauges, norms, shifted and restricted
/// variants) followed by seeded random members, `count` in total.
std::vector<NamedFixture> fixture_corpus(std::size_t n, std::size_t count, std::uint64_t seed);

/// Corpus members with bounded domain.
std::vector<NamedFixture> bounded_corpus(std::size_t n, std::size_t count, std::uint64_t seed);

/// Known suites, in a fixed order.
const std::vector<std::string>& suite_names();

/// Runs a named suite with `count` seeded trials. Jobs run on `threads`
/// workers; the result is sorted by (law, seed) and does not depend on
/// the thread count. Throws InvalidArgument for an unknown suite.
std::vector<LawReport> run_suite(const std::string& name, std::uint64_t seed, std::size_t count,
                                 std::size_t threads = 1);

}  // namespace convval
