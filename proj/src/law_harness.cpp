#include "convval/law_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "convval/errors.hpp"

namespace convval {

namespace {

using Rng = std::mt19937_64;

long rand_int(Rng& g, long lo, long hi) {
  return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational rand_rat(Rng& g, long lo, long hi, long den) { return Rational(rand_int(g, lo, hi), den); }

std::string vec_text(const Vec& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += to_string(x[i]);
  }
  return s + ")";
}

Extended ext_add(const Extended& a, const Extended& b) {
  if (!a.finite || !b.finite) return Extended::infinity();
  return Extended::of(a.value + b.value);
}

Extended ext_scale(const Rational& t, const Extended& a) {
  if (!a.finite) return a;
  return Extended::of(t * a.value);
}

HRep with_row(HRep h, Vec normal, Rational offset) {
  h.rows.push_back(Halfspace{std::move(normal), std::move(offset)});
  return h;
}

// Zero tolerance on the exact path, a relative rounding allowance otherwise.
double path_tolerance(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return 0.0;
  return 1e-9 * std::max({1.0, std::abs(a.to_double()), std::abs(b.to_double())});
}

LawReport first_failure(const std::string& law, const std::vector<LawReport>& parts, std::uint64_t seed) {
  for (const auto& r : parts) {
    if (!r.pass) return r;
  }
  if (parts.empty()) return check_flag(law, true, seed);
  return parts.back();
}

std::vector<Vec> cube_vertices(std::size_t i, std::size_t k) {
  std::vector<Vec> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << i); ++mask) {
    Vec c = zeros(k);
    for (std::size_t j = 0; j < i; ++j) {
      if (mask >> j & 1) c[j] = 1;
    }
    out.push_back(std::move(c));
  }
  return out;
}

Polyhedron unit_cube(std::size_t n) {
  Vec lo = zeros(n), hi(n, Rational(1));
  return Polyhedron::box(lo, hi);
}

Polyhedron symmetric_cube(std::size_t n, const Rational& r) {
  Vec lo(n, -r), hi(n, r);
  return Polyhedron::box(lo, hi);
}

Polyhedron cross_polytope(std::size_t n) {
  VRep v{n, {}, {}, {}, false};
  for (std::size_t i = 0; i < n; ++i) {
    v.vertices.push_back(unit_vector(n, i));
    v.vertices.push_back(scale(unit_vector(n, i), Rational(-1)));
  }
  return Polyhedron::from_vrep(v);
}

Polyhedron corner_simplex(std::size_t n) {
  VRep v{n, {zeros(n)}, {}, {}, false};
  for (std::size_t i = 0; i < n; ++i) v.vertices.push_back(unit_vector(n, i));
  return Polyhedron::from_vrep(v);
}

}  // namespace

LawReport check_valuation_identity(const ValuationFn& z, const FixturePair& pair, std::uint64_t seed,
                                   double tolerance) {
  if (!pair.certified) throw InvalidArgument("check_valuation_identity: pair is not certified");
  const PwaConvex meet = inf_if_convex(pair.u, pair.v);
  const PwaConvex join = sup(pair.u, pair.v);
  const Number left = z(join) + z(meet);
  const Number right = z(pair.u) + z(pair.v);
  const double tol = left.is_exact() && right.is_exact() ? 0.0 : tolerance;
  return compare_values("valuation.identity", left, right, tol, seed,
                        digest_of({canonical_text(pair.u), canonical_text(pair.v)}), pair.provenance);
}

LawReport check_min_lattice(const FixturePair& pair, std::uint64_t seed) {
  const std::string digest = digest_of({canonical_text(pair.u), canonical_text(pair.v)});
  const Rational mu = min_value(pair.u).t_min;
  const Rational mv = min_value(pair.v).t_min;
  const PwaConvex join = sup(pair.u, pair.v);
  if (pair.certified) {
    const PwaConvex meet = inf_if_convex(pair.u, pair.v);
    LawReport r = compare_values("valuation.min_lattice", min_value(meet).t_min, std::min(mu, mv), 0.0, seed,
                                 digest, "meet");
    if (!r.pass) return r;
  }
  return compare_values("valuation.min_lattice", min_value(join).t_min, std::max(mu, mv), 0.0, seed, digest, "join");
}

PwaConvex random_pwa(std::uint64_t seed, std::size_t n, bool bounded) {
  Rng g(seed * 0x9E3779B97F4A7C15ULL + n);
  std::vector<AffinePiece> pieces;
  HRep dom{n, {}, false};
  auto random_piece = [&](long range) {
    AffinePiece p{zeros(n), rand_rat(g, -2, 2, 2)};
    for (auto& a : p.slope) a = rand_int(g, -range, range);
    return p;
  };
  if (bounded) {
    const long m = rand_int(g, 1, 3);
    for (long j = 0; j < m; ++j) pieces.push_back(random_piece(2));
    Vec lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = rand_rat(g, -4, -1, 2);
      hi[i] = rand_rat(g, 1, 4, 2);
    }
    dom = Polyhedron::box(lo, hi).hrep();
    Vec cut = zeros(n);
    for (auto& a : cut) a = rand_int(g, -1, 1);
    if (!is_zero(cut)) dom = with_row(dom, cut, rand_rat(g, 1, 3, 2));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      AffinePiece up{unit_vector(n, i), rand_rat(g, -2, 2, 2)};
      up.slope[i] = rand_int(g, 1, 3);
      pieces.push_back(up);
      AffinePiece down{unit_vector(n, i), rand_rat(g, -2, 2, 2)};
      down.slope[i] = -rand_int(g, 1, 3);
      pieces.push_back(down);
    }
    const long extra = rand_int(g, 0, 2);
    for (long j = 0; j < extra; ++j) pieces.push_back(random_piece(2));
    if (g() % 3 == 0) {
      Vec cut = zeros(n);
      cut[g() % n] = 1;
      dom = with_row(dom, cut, rand_rat(g, 1, 4, 2));
    }
  }
  return PwaConvex::make(pieces, dom);
}

FixturePair generate_pair_with_convex_min(std::uint64_t seed, std::size_t n) {
  if (n < 1 || n > 4) throw InvalidArgument("generate_pair_with_convex_min: n must be in 1..4");
  Rng g(seed ^ (0xC2B2AE3D27D4EB4FULL * (n + 1)));
  const PwaConvex w = random_pwa(g(), n, g() % 2 == 0);
  const Vec x0 = min_value(w).argmin.vrep().vertices.front();
  const HRep& dom = w.domain().hrep();
  FixturePair out;
  out.certified = true;
  if (g() % 2 == 0) {
    Vec h = zeros(n);
    while (is_zero(h)) {
      for (auto& a : h) a = rand_int(g, -2, 2);
    }
    const Rational c = dot(h, x0);
    out.u = PwaConvex::make(w.pieces(), with_row(dom, h, c));
    out.v = PwaConvex::make(w.pieces(), with_row(dom, scale(h, Rational(-1)), -c));
    out.provenance = "vertical-cut";
  } else {
    AffinePiece l{zeros(n), Rational(0)};
    for (auto& a : l.slope) a = rand_int(g, -2, 2);
    const Rational delta = rand_rat(g, 0, 4, 2);
    l.intercept = w.eval(x0).value + delta - dot(l.slope, x0);
    std::vector<AffinePiece> up = w.pieces();
    up.push_back(l);
    out.u = PwaConvex::make(up, dom);
    HRep below = dom;
    for (const auto& p : w.pieces()) {
      below = with_row(below, sub(p.slope, l.slope), l.intercept - p.intercept);
    }
    out.v = PwaConvex::make(w.pieces(), below);
    out.provenance = "epigraph-cut";
  }
  return out;
}

GrowthFunction random_compact_zeta(std::uint64_t seed) {
  Rng g(seed * 0xD6E8FEB86659FD93ULL + 7);
  const long m = rand_int(g, 1, 4);
  std::vector<Rational> breaks;
  std::vector<Rational> values;
  for (long i = 0; i <= m; ++i) {
    breaks.emplace_back(i);
    values.push_back(i == m ? Rational(0) : rand_rat(g, 0, 8, 4));
  }
  std::vector<Polynomial> pieces;
  for (long i = 0; i < m; ++i) {
    const Rational& a = breaks[i];
    const Rational& b = breaks[i + 1];
    const Polynomial t = Polynomial::monomial(Rational(1), 1);
    Polynomial p = Polynomial::constant(values[i]) +
                   Polynomial::constant((values[i + 1] - values[i]) / (b - a)) * (t - Polynomial::constant(a));
    const Polynomial bump = (t - Polynomial::constant(a)) * (Polynomial::constant(b) - t);
    p = p + Polynomial::constant(rand_rat(g, -4, 4, 4)) * bump;
    p = p + Polynomial::constant(rand_rat(g, -2, 2, 4)) * bump *
                (t - Polynomial::constant((a + b) / 2));
    pieces.push_back(p);
  }
  return GrowthFunction::make(breaks, values.front(), pieces, std::nullopt);
}

Polyhedron random_origin_polytope(std::uint64_t seed, std::size_t n) {
  Rng g(seed * 0xA24BAED4963EE407ULL + n);
  VRep v{n, {}, {}, {}, false};
  for (std::size_t i = 0; i < n; ++i) {
    Vec a = zeros(n), b = zeros(n);
    a[i] = rand_rat(g, 1, 4, 2);
    b[i] = -rand_rat(g, 1, 4, 2);
    v.vertices.push_back(a);
    v.vertices.push_back(b);
  }
  const long extra = rand_int(g, 0, 3);
  for (long j = 0; j < extra; ++j) {
    Vec x = zeros(n);
    for (auto& c : x) c = rand_rat(g, -4, 4, 2);
    v.vertices.push_back(x);
  }
  return Polyhedron::from_vrep(v);
}

TruncationFixture truncation_fixture(std::size_t n, const Rational& s) {
  if (n < 2) throw InvalidArgument("truncation_fixture: n must be at least 2");
  if (s <= 0) throw InvalidArgument("truncation_fixture: s must be positive");
  VRep pv{n, {zeros(n)}, {}, {}, false};
  VRep qv{n, {zeros(n)}, {}, {}, false};
  Vec mid = zeros(n);
  mid[0] = Rational(1, 2);
  mid[1] = Rational(1, 2);
  pv.vertices.push_back(mid);
  for (std::size_t i = 1; i < n; ++i) {
    pv.vertices.push_back(unit_vector(n, i));
    qv.vertices.push_back(unit_vector(n, i));
  }
  TruncationFixture f;
  f.p = Polyhedron::from_vrep(pv);
  f.q = Polyhedron::from_vrep(qv);
  f.l_p = cone_function(f.p, 0);
  const HRep cut = with_row(f.l_p.domain().hrep(), unit_vector(n, 0), s / 2);
  f.u_s = PwaConvex::make(f.l_p.pieces(), cut);
  const Vec tau = scale(mid, s);
  f.l_p_s = transform(f.l_p, identity(n), tau, s);
  f.l_q_s = transform(cone_function(f.q, 0), identity(n), tau, s);

  if (!(inf_if_convex(f.u_s, f.l_p_s) == f.l_p)) throw std::logic_error("truncation_fixture: meet differs from l_P");
  if (!(sup(f.u_s, f.l_p_s) == f.l_q_s)) throw std::logic_error("truncation_fixture: join differs from l_{Q,s}");
  std::vector<Rational> levels;
  for (int j = 0; j < 10; ++j) levels.push_back(s * Rational(j, 4));
  const LawReport r = check_truncation_levels(f, levels);
  if (!r.pass) throw std::logic_error("truncation_fixture: sublevel identity fails at " + r.witness);
  return f;
}

LawReport check_truncation_levels(const TruncationFixture& f, const std::vector<Rational>& levels) {
  const std::string digest = digest_of({canonical_text(f.u_s), canonical_text(f.l_p_s)});
  for (const auto& t : levels) {
    const Polyhedron a = sublevel(f.u_s, t);
    const Polyhedron b = sublevel(f.l_p_s, t);
    const Polyhedron c = sublevel(f.l_p, t);
    const Polyhedron d = sublevel(f.l_q_s, t);
    const std::string where = "t=" + to_string(t);
    if (!(intersect(a, b) == d)) return check_flag("truncation.levels", false, 0, digest, where + " intersection");
    if (!c.contains(a) || !c.contains(b)) return check_flag("truncation.levels", false, 0, digest, where + " union");
    bool covered;
    if (c.is_full_dimensional()) {
      covered = volume(a) + volume(b) - volume(d) == volume(c);
    } else {
      covered = a == c || b == c;
    }
    if (!covered) return check_flag("truncation.levels", false, 0, digest, where + " union");
  }
  return check_flag("truncation.levels", true, 0, digest);
}

PwaConvex staircase_fixture(std::size_t k, const std::vector<Rational>& h, std::size_t i) {
  if (i > k) throw InvalidArgument("staircase_fixture: i exceeds k");
  if (h.size() != k) throw InvalidArgument("staircase_fixture: need one step per coordinate");
  for (const auto& x : h) {
    if (x <= 0) throw InvalidArgument("staircase_fixture: steps must be positive");
  }
  VRep epi{k + 1, {}, {}, {}, false};
  for (auto c : cube_vertices(i, k)) {
    c.push_back(Rational(0));
    epi.vertices.push_back(std::move(c));
  }
  for (std::size_t j = i; j < k; ++j) {
    Vec r = zeros(k + 1);
    r[j] = 1;
    r[k] = h[j];
    epi.rays.push_back(std::move(r));
  }
  Vec up = zeros(k + 1);
  up[k] = 1;
  epi.rays.push_back(up);
  const PwaConvex u = PwaConvex::from_epigraph(Polyhedron::from_vrep(epi));

  for (const Rational& s : {Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(3)}) {
    VRep lvl{k, {}, {}, {}, false};
    for (const auto& c : cube_vertices(i, k)) {
      lvl.vertices.push_back(c);
      for (std::size_t j = i; j < k; ++j) {
        Vec x = c;
        x[j] += s / h[j];
        lvl.vertices.push_back(std::move(x));
      }
    }
    if (!(sublevel(u, s) == Polyhedron::from_vrep(lvl))) {
      throw std::logic_error("staircase_fixture: sublevel formula fails at s=" + to_string(s));
    }
  }
  return u;
}

bool StaircaseResult::pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.pass; });
}

StaircaseResult staircase_limit_check(const PiecewisePoly& zeta, std::size_t k, const Rational& t,
                                      const std::vector<Rational>& h_sequence) {
  if (k < 1) throw InvalidArgument("staircase_limit_check: k must be positive");
  const std::string digest = digest_of({canonical_text(zeta), std::to_string(k), to_string(t)});
  const PsiFunction psi = psi_from_zeta(zeta, k);
  PiecewisePoly d = psi;
  for (std::size_t j = 0; j + 1 < k; ++j) d = d.derivative();
  Rational sign = Rational(1) / factorial(k);
  if (k % 2 == 1) sign = -sign;
  const Number target = zeta(t);

  StaircaseResult out;
  LawReport two_path = check_flag("staircase.two_path", true, 0, digest);
  for (const auto& h : h_sequence) {
    if (h <= 0) throw InvalidArgument("staircase_limit_check: steps must be positive");
    AffinePiece piece{zeros(k), t};
    piece.slope[k - 1] = h;
    const PwaConvex v = PwaConvex::make({piece}, unit_cube(k).hrep());
    const Number engine = integral_valuation(zeta, v);
    const Number quotient = Number(sign) * (d(t + h) - d(t)) / Number(h);
    const LawReport r = compare_values("staircase.two_path", engine, quotient, path_tolerance(engine, quotient), 0,
                                       digest, "h=" + to_string(h));
    if (two_path.pass) two_path = r;
    out.h.push_back(h);
    out.quotients.push_back(engine);
    out.errors.push_back(abs_difference(engine, target));
  }
  if (two_path.pass && !h_sequence.empty()) two_path.witness.clear();
  out.reports.push_back(two_path);

  const Number limit = signed_scaled_derivative(psi, k)(t);
  out.reports.push_back(compare_values("staircase.symbolic_limit", limit, target, path_tolerance(limit, target), 0,
                                       digest, "t=" + to_string(t)));

  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < out.h.size(); ++j) {
    if (out.errors[j] > 0.0) {
      xs.push_back(std::log(to_double(out.h[j])));
      ys.push_back(std::log(out.errors[j]));
    }
  }
  const bool last_exact = !out.errors.empty() && out.errors.back() == 0.0;
  if (xs.size() < 2 || last_exact) {
    out.order = last_exact || xs.empty() ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    double mx = 0, my = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      mx += xs[j];
      my += ys[j];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      sxy += (xs[j] - mx) * (ys[j] - my);
      sxx += (xs[j] - mx) * (xs[j] - mx);
    }
    out.order = sxx > 0 ? sxy / sxx : 0.0;
  }
  out.reports.push_back(check_flag("staircase.order", out.order >= 0.9, 0, digest,
                                   "order=" + format_double(out.order)));
  if (out.quotients.empty()) {
    out.reports.push_back(check_flag("staircase.final_error", false, 0, digest, "no steps"));
  } else {
    out.reports.push_back(compare_values("staircase.final_error", out.quotients.back(), target, 1e-2, 0, digest,
                                         "h=" + to_string(out.h.back())));
  }
  return out;
}

PwaConvex smoothing_sequence(const PwaConvex& u, const Polyhedron& k_steep, const Rational& k) {
  if (k < 1) throw InvalidArgument("smoothing_sequence: k must be at least 1");
  const std::size_t n = u.dimension();
  if (k_steep.dimension() != n) throw DimensionMismatch("smoothing_sequence: dimension mismatch");
  if (!k_steep.is_full_dimensional() || !relative_interior_contains(k_steep, zeros(n))) {
    throw InvalidArgument("smoothing_sequence: 0 must be interior to K");
  }
  return inf_convolution(u, cone_function(dilate(k_steep, 1 / k), 0));
}

LevelConvergence check_level_convergence(const std::vector<PwaConvex>& sequence, const PwaConvex& u,
                                         const std::vector<Rational>& levels, double threshold, bool strict) {
  LevelConvergence out;
  std::vector<std::string> parts{canonical_text(u)};
  for (const auto& s : sequence) parts.push_back(canonical_text(s));
  const std::string digest = digest_of(parts);
  const double inf = std::numeric_limits<double>::infinity();
  std::string failure;
  for (const auto& t : levels) {
    const Polyhedron target = sublevel(u, t);
    std::vector<double> d;
    for (const auto& s : sequence) {
      const Polyhedron lvl = sublevel(s, t);
      if (lvl.is_empty() && target.is_empty()) d.push_back(0.0);
      else if (lvl.is_empty() || target.is_empty()) d.push_back(inf);
      else d.push_back(hausdorff_distance(lvl, target));
    }
    const std::string where = "t=" + to_string(t);
    if (failure.empty()) {
      if (target.is_empty()) {
        if (!sequence.empty() && !sublevel(sequence.back(), t).is_empty()) failure = where + " not eventually empty";
      } else if (d.empty() || !(d.back() < threshold)) {
        failure = where + " final distance " + (d.empty() ? std::string("none") : format_double(d.back()));
      } else {
        const std::size_t from = strict ? 0 : d.size() / 2;
        for (std::size_t j = from; j + 1 < d.size(); ++j) {
          const bool ok = strict ? d[j + 1] + 1e-12 < d[j] : d[j + 1] <= d[j] + 1e-12;
          if (!ok) {
            failure = where + " index " + std::to_string(j + 1);
            break;
          }
        }
      }
    }
    out.distances.push_back(std::move(d));
  }
  out.report = check_flag("convergence.surrogate_levels", failure.empty(), 0, digest, failure);
  return out;
}

LawReport check_invariance(const ValuationFn& z, const PwaConvex& u, std::size_t shears, std::size_t translations,
                           std::uint64_t seed) {
  const std::size_t n = u.dimension();
  const std::string digest = digest_of({canonical_text(u)});
  const Number base = z(u);
  Rng g(seed * 0x94D049BB133111EBULL + 3);
  LawReport last = check_flag("invariance", true, seed, digest);
  for (std::size_t a = 0; a < shears; ++a) {
    const Mat phi = random_unimodular(g(), n, 2 * n);
    for (std::size_t b = 0; b < translations; ++b) {
      Vec tau = zeros(n);
      for (auto& c : tau) c = rand_rat(g, -12, 12, 4);
      const Number moved = z(transform(u, phi, tau, 0));
      last = compare_values("invariance", moved, base, path_tolerance(moved, base), seed, digest,
                            "shear " + std::to_string(a) + " tau " + vec_text(tau));
      if (!last.pass) return last;
    }
  }
  last.witness.clear();
  return last;
}

LawReport check_invariance(const ValuationFn& z, const PwaConvex& u, std::size_t trials, std::uint64_t seed) {
  return check_invariance(z, u, trials, 1, seed);
}

std::vector<Vec> rational_grid(std::uint64_t seed, std::size_t n, std::size_t count) {
  Rng g(seed * 0xBF58476D1CE4E5B9ULL + n);
  std::vector<Vec> out;
  for (std::size_t j = 0; j < count; ++j) {
    Vec x(n);
    for (auto& c : x) c = rand_rat(g, -12, 12, 4);
    out.push_back(std::move(x));
  }
  return out;
}

LawReport check_biconjugation(const ClosedPwa& u, std::uint64_t seed) {
  return check_flag("conjugacy.biconjugate", biconjugate_check(u), seed, digest_of({canonical_text(u)}));
}

LawReport check_inf_conv_conjugate(const PwaConvex& u, const PwaConvex& v, const std::vector<Vec>& points,
                                   std::uint64_t seed) {
  const std::string digest = digest_of({canonical_text(u), canonical_text(v)});
  const ClosedPwa lhs = conjugate(inf_convolution(u, v));
  const ClosedPwa cu = conjugate(u);
  const ClosedPwa cv = conjugate(v);
  for (const auto& y : points) {
    const Extended a = lhs.eval(y);
    const Extended b = ext_add(cu.eval(y), cv.eval(y));
    if (!(a == b)) {
      return check_flag("conjugacy.inf_conv", false, seed, digest,
                        vec_text(y) + ": " + to_string(a) + " vs " + to_string(b));
    }
  }
  return check_flag("conjugacy.inf_conv", true, seed, digest);
}

LawReport check_epi_scale_conjugate(const PwaConvex& u, const Rational& t, const std::vector<Vec>& points,
                                    std::uint64_t seed) {
  const std::string digest = digest_of({canonical_text(u), to_string(t)});
  const ClosedPwa lhs = conjugate(epi_scale(u, t));
  const ClosedPwa cu = conjugate(u);
  for (const auto& y : points) {
    const Extended a = lhs.eval(y);
    const Extended b = ext_scale(t, cu.eval(y));
    if (!(a == b)) {
      return check_flag("conjugacy.epi_scale", false, seed, digest,
                        vec_text(y) + ": " + to_string(a) + " vs " + to_string(b));
    }
  }
  return check_flag("conjugacy.epi_scale", true, seed, digest);
}

LawReport check_moreau_below(const PwaConvex& u, const std::vector<Rational>& ts, std::uint64_t seed) {
  const std::string digest = digest_of({canonical_text(u)});
  const std::size_t n = u.dimension();
  for (const auto& t : ts) {
    for (const auto& v : u.epigraph().vrep().vertices) {
      const Vec x(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
      const Rational e = moreau_eval(u, t, x);
      if (e > v[n]) {
        return check_flag("moreau.below", false, seed, digest, "t=" + to_string(t) + " x=" + vec_text(x));
      }
    }
  }
  return check_flag("moreau.below", true, seed, digest);
}

LawReport check_moreau_origin(std::size_t n, const Rational& t, const std::vector<Vec>& points) {
  const PwaConvex ind = indicator_function(Polyhedron::point(zeros(n)), 0);
  std::vector<LawReport> parts;
  for (const auto& x : points) {
    parts.push_back(compare_values("moreau.origin", moreau_eval(ind, t, x), norm_squared(x) / (2 * t), 0.0, 0,
                                   to_string(t), vec_text(x)));
    if (!parts.back().pass) break;
  }
  return first_failure("moreau.origin", parts, 0);
}

LawReport check_moreau_monotone(const PwaConvex& u, const Vec& x, const std::vector<Rational>& ts) {
  const std::string digest = digest_of({canonical_text(u), vec_text(x)});
  const Extended ux = u.eval(x);
  if (!ux.finite || !relative_interior_contains(u.domain(), x)) {
    throw InvalidArgument("check_moreau_monotone: x must be interior to dom u");
  }
  std::optional<Rational> prev;
  for (const auto& t : ts) {
    const Rational err = ux.value - moreau_eval(u, t, x);
    if (err < 0 || (prev && err > *prev)) {
      return check_flag("moreau.pointwise_surrogate", false, 0, digest, "t=" + to_string(t) + " error " + to_string(err));
    }
    prev = err;
  }
  return check_flag("moreau.pointwise_surrogate", true, 0, digest);
}

LawReport check_cone_bound(const PwaConvex& u, std::uint64_t seed) {
  const ConeBound c = cone_bound(u);
  return check_flag("cone.bound", c.a > 0 && certify_cone_bound(u, c), seed, digest_of({canonical_text(u)}),
                    "a=" + to_string(c.a) + " b=" + to_string(c.b));
}

LawReport check_uniform_cone_bound(const std::vector<PwaConvex>& us, std::uint64_t seed) {
  std::vector<std::string> parts;
  for (const auto& u : us) parts.push_back(canonical_text(u));
  const ConeBound c = uniform_cone_bound(us);
  bool ok = c.a > 0;
  std::string witness = "a=" + to_string(c.a) + " b=" + to_string(c.b);
  for (std::size_t j = 0; ok && j < us.size(); ++j) {
    if (!certify_cone_bound(us[j], c)) {
      ok = false;
      witness += " member " + std::to_string(j);
    }
  }
  return check_flag("cone.uniform", ok, seed, digest_of(parts), witness);
}

LawReport check_moment_identity(const PiecewisePoly& zeta, const Polyhedron& p) {
  const std::size_t n = p.dimension();
  const Number lhs = integral_valuation(zeta, cone_function(p, 0));
  const Number rhs = Number(volume(p) * static_cast<long>(n)) * moment(zeta, n - 1);
  return compare_values("growth.moment", lhs, rhs, path_tolerance(lhs, rhs), 0,
                        digest_of({canonical_text(zeta), canonical_text(cone_function(p, 0))}));
}

LawReport check_cone_two_path(const PiecewisePoly& zeta0, const PiecewisePoly& zetan, const Polyhedron& p,
                              const Rational& t) {
  const std::size_t n = p.dimension();
  const PwaConvex l = cone_function(p, t);
  const Number lhs = combined_valuation(zeta0, zetan, l);
  const Number rhs = zeta0(t) + Number(volume(p)) * psi_from_zeta(zetan, n)(t);
  return compare_values("growth.two_path", lhs, rhs, path_tolerance(lhs, rhs), 0,
                        digest_of({canonical_text(zeta0), canonical_text(zetan), canonical_text(l)}),
                        "t=" + to_string(t));
}

LawReport reduction_demonstration(const GrowthFunction& zeta0, const GrowthFunction& zetan,
                                  const std::vector<PwaConvex>& fixtures, const std::vector<Rational>& tgrid) {
  const PiecewisePoly dz = zetan.derivative();
  const ValuationFn z1 = [&](const PwaConvex& u) { return combined_valuation(zeta0, zetan, u); };
  // ∫ zeta dV = -∫ V zeta' once zeta V vanishes at infinity.
  const ValuationFn z2 = [&](const PwaConvex& u) {
    const LevelVolumeProfile prof = level_volume_profile(u);
    Number acc = zeta0(prof.t_min);
    for (std::size_t i = 0; i < prof.pieces.size(); ++i) {
      acc = acc - integrate_against(dz, prof.pieces[i], prof.breakpoints[i], prof.breakpoints[i + 1]);
    }
    return acc - integrate_against(dz, prof.final, prof.breakpoints.back(), std::nullopt);
  };
  const std::string digest = digest_of({canonical_text(zeta0), canonical_text(zetan)});
  if (fixtures.empty()) return check_flag("reduction", true, 0, digest);
  const std::size_t n = fixtures.front().dimension();
  const GrowthSamples g1 = extract_growth(z1, n, tgrid);
  const GrowthSamples g2 = extract_growth(z2, n, tgrid);
  for (std::size_t j = 0; j < tgrid.size(); ++j) {
    const std::string where = "t=" + to_string(tgrid[j]);
    LawReport r = compare_values("reduction", g1.psi0[j], g2.psi0[j], path_tolerance(g1.psi0[j], g2.psi0[j]), 0,
                                 digest, "psi0 " + where);
    if (r.pass) {
      r = compare_values("reduction", g1.psin[j], g2.psin[j], path_tolerance(g1.psin[j], g2.psin[j]), 0, digest,
                         "psin " + where);
    }
    if (!r.pass) return r;
  }
  LawReport last = check_flag("reduction", true, 0, digest);
  for (std::size_t j = 0; j < fixtures.size(); ++j) {
    const Number a = z1(fixtures[j]);
    const Number b = z2(fixtures[j]);
    last = compare_values("reduction", a, b, path_tolerance(a, b), 0, digest, "fixture " + std::to_string(j));
    if (!last.pass) return last;
  }
  last.witness.clear();
  return last;
}

namespace {

std::vector<NamedFixture> handmade(std::size_t n) {
  std::vector<NamedFixture> out;
  const Vec ones(n, Rational(1));
  out.push_back({"ind-unit-cube", indicator_function(unit_cube(n), 0)});
  out.push_back({"ind-cube-shifted", indicator_function(symmetric_cube(n, 1), Rational(1, 2))});
  out.push_back({"ind-simplex", indicator_function(corner_simplex(n), -1)});
  out.push_back({"gauge-cube", cone_function(symmetric_cube(n, 1), 0)});
  out.push_back({"gauge-cross", cone_function(cross_polytope(n), Rational(1, 3))});
  out.push_back({"gauge-corner", cone_function(unit_cube(n), 0)});
  {
    const PwaConvex g = cone_function(cross_polytope(n), 0);
    HRep box = symmetric_cube(n, 2).hrep();
    box = with_row(box, ones, Rational(1));
    out.push_back({"l1-restricted", PwaConvex::make(g.pieces(), box)});
  }
  {
    std::vector<AffinePiece> pieces;
    for (std::size_t i = 0; i < n; ++i) {
      pieces.push_back({unit_vector(n, i), Rational(0)});
      pieces.push_back({scale(unit_vector(n, i), Rational(-2)), Rational(1)});
    }
    out.push_back({"asymmetric-max", PwaConvex::make(pieces, HRep{n, {}, false})});
  }
  {
    std::vector<AffinePiece> pieces{{ones, Rational(0)}};
    out.push_back({"affine-on-box", PwaConvex::make(pieces, symmetric_cube(n, 1).hrep())});
  }
  return out;
}

}  // namespace

std::vector<NamedFixture> fixture_corpus(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<NamedFixture> out = handmade(n);
  if (out.size() > count) out.resize(count);
  for (std::size_t j = 0; out.size() < count; ++j) {
    const bool bounded = j % 2 == 0;
    out.push_back({"random-" + std::to_string(seed + j), random_pwa(seed + j, n, bounded)});
  }
  return out;
}

std::vector<NamedFixture> bounded_corpus(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<NamedFixture> out;
  for (auto& f : handmade(n)) {
    if (out.size() < count && f.u.domain().is_bounded()) out.push_back(std::move(f));
  }
  for (std::size_t j = 0; out.size() < count; ++j) {
    out.push_back({"random-" + std::to_string(seed + j), random_pwa(seed + j, n, true)});
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"valuation", "invariance", "growth",
                                              "convergence", "staircase", "conjugacy"};
  return names;
}

namespace {

using Job = std::function<std::vector<LawReport>()>;

GrowthFunction staircase_zeta() {
  const Polynomial t = Polynomial::monomial(Rational(1), 1);
  const Polynomial two = Polynomial::constant(Rational(2));
  return GrowthFunction::make({Rational(0), Rational(2)}, Rational(4), {(two - t) * (two - t)}, std::nullopt);
}

std::vector<Rational> steps_down(int count) {
  std::vector<Rational> h;
  Rational x(1, 2);
  for (int j = 0; j < count; ++j) {
    h.push_back(x);
    x /= 2;
  }
  return h;
}

std::vector<Rational> levels_above(const PwaConvex& u) {
  Rational top = min_value(u).t_min;
  for (const auto& v : u.epigraph().vrep().vertices) top = std::max(top, v.back());
  return {top + Rational(1, 2), top + 2};
}

void valuation_jobs(std::vector<Job>& jobs, std::uint64_t seed, std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t n : {2, 3}) {
      jobs.push_back([seed, j, n] {
        const std::uint64_t s = seed + j;
        const FixturePair pair = generate_pair_with_convex_min(s, n);
        std::vector<LawReport> out;
        for (std::uint64_t z = 0; z < 3; ++z) {
          const GrowthFunction zeta = random_compact_zeta(seed + 1000 + z);
          out.push_back(check_valuation_identity([&](const PwaConvex& u) { return integral_valuation(zeta, u); },
                                                 pair, s));
        }
        const GrowthFunction zeta0 = random_compact_zeta(seed + 2000);
        const GrowthFunction zetan = random_compact_zeta(seed + 2001);
        LawReport combined = check_valuation_identity(
            [&](const PwaConvex& u) { return combined_valuation(zeta0, zetan, u); }, pair, s);
        combined.law = "valuation.identity_combined";
        out.push_back(combined);
        out.push_back(check_min_lattice(pair, s));
        return out;
      });
    }
  }
  for (std::size_t n : {2, 3}) {
    jobs.push_back([seed, n] {
      std::vector<LawReport> out;
      const GrowthFunction zeta0 = random_compact_zeta(seed + 3000);
      const GrowthFunction zetan = random_compact_zeta(seed + 3001);
      const ValuationFn z = [&](const PwaConvex& u) { return combined_valuation(zeta0, zetan, u); };
      for (const Rational& s : {Rational(1, 2), Rational(1), Rational(2), Rational(8)}) {
        const TruncationFixture f = truncation_fixture(n, s);
        LawReport r = compare_values("truncation.identity", z(f.u_s) + z(f.l_p_s), z(f.l_p) + z(f.l_q_s), 0.0, seed,
                                     digest_of({std::to_string(n), to_string(s)}));
        out.push_back(r);
        const Number predicted =
            zeta0(Rational(0)) + Number(volume(f.p)) * (psi_from_zeta(zetan, n)(0) - psi_from_zeta(zetan, n)(s));
        out.push_back(compare_values("truncation.predicted", z(f.u_s), predicted, 0.0, seed, r.digest));
        out.push_back(compare_values("truncation.null_volume", Number(volume(f.q)), Number(Rational(0)), 0.0, seed,
                                     r.digest));
      }
      return out;
    });
  }
}

void invariance_jobs(std::vector<Job>& jobs, std::uint64_t seed, std::size_t count) {
  for (std::size_t n : {2, 3}) {
    const auto corpus = fixture_corpus(n, count, seed);
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      jobs.push_back([seed, j, u = corpus[j].u] {
        const GrowthFunction zeta0 = random_compact_zeta(seed + 4000);
        const GrowthFunction zetan = random_compact_zeta(seed + 4001);
        const ValuationFn z = [&](const PwaConvex& f) { return combined_valuation(zeta0, zetan, f); };
        return std::vector<LawReport>{check_invariance(z, u, 3, 2, seed + j)};
      });
    }
  }
}

void growth_jobs(std::vector<Job>& jobs, std::uint64_t seed, std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) {
    jobs.push_back([seed, j] {
      const std::uint64_t s = seed + j;
      const GrowthFunction zeta = random_compact_zeta(s);
      std::vector<LawReport> out;
      for (std::size_t n : {2, 3}) {
        LawReport r = check_derivative_relation(zeta, n);
        r.seed = s;
        out.push_back(r);
        r = check_psi_vanishes(zeta, n);
        r.seed = s;
        out.push_back(r);
        r = check_moment_finiteness_of_derivative(psi_from_zeta(zeta, n), n, zeta);
        r.seed = s;
        out.push_back(r);
        r = check_moment_identity(zeta, random_origin_polytope(s, n));
        r.seed = s;
        out.push_back(r);
        r = check_cone_two_path(random_compact_zeta(s + 500), zeta, random_origin_polytope(s + 1, n), Rational(1, 3));
        r.seed = s;
        out.push_back(r);
      }
      return out;
    });
  }
  jobs.push_back([seed] {
    std::vector<Rational> grid{Rational(-1), Rational(0), Rational(1, 2), Rational(3, 2), Rational(5)};
    std::vector<PwaConvex> fixtures;
    for (auto& f : fixture_corpus(2, 8, seed)) fixtures.push_back(f.u);
    LawReport r = reduction_demonstration(random_compact_zeta(seed + 5000), random_compact_zeta(seed + 5001),
                                          fixtures, grid);
    r.seed = seed;
    return std::vector<LawReport>{r};
  });
}

void convergence_jobs(std::vector<Job>& jobs, std::uint64_t seed, std::size_t count) {
  for (std::size_t n : {2, 3}) {
    const auto corpus = bounded_corpus(n, count, seed);
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      jobs.push_back([seed, j, n, u = corpus[j].u] {
        const Polyhedron k_steep = symmetric_cube(n, Rational(1, 1048576));
        std::vector<PwaConvex> seq;
        for (long k = 1; k <= 1024; k *= 2) seq.push_back(smoothing_sequence(u, k_steep, Rational(k)));
        std::vector<LawReport> out;
        LawReport r = check_level_convergence(seq, u, levels_above(u), 1e-6, true).report;
        r.seed = seed + j;
        out.push_back(r);
        const GrowthFunction zeta = random_compact_zeta(seed + 6000);
        const Number zu = integral_valuation(zeta, u);
        std::vector<double> gaps;
        for (const auto& s : seq) gaps.push_back(abs_difference(integral_valuation(zeta, s), zu));
        bool ok = gaps.back() < 1e-6;
        for (std::size_t i = 0; ok && i + 1 < gaps.size(); ++i) ok = gaps[i + 1] <= gaps[i];
        out.push_back(check_flag("convergence.surrogate_valuation", ok, seed + j, r.digest,
                                 "final gap " + format_double(gaps.back())));
        out.push_back(check_uniform_cone_bound(seq, seed + j));
        return out;
      });
    }
  }
  jobs.push_back([seed] {
    std::vector<LawReport> out;
    std::vector<Rational> ts;
    for (int j = 1; j <= 10; ++j) ts.push_back(Rational(1, 1L << j));
    for (std::size_t n : {2, 3}) {
      out.push_back(check_moreau_origin(n, Rational(1, 3), rational_grid(seed, n, 20)));
      for (const auto& f : bounded_corpus(n, 3, seed)) {
        LawReport r = check_moreau_below(f.u, {Rational(1), Rational(1, 4)}, seed);
        out.push_back(r);
        const Vec centre = [&] {
          Vec c = zeros(n);
          const auto& vs = f.u.domain().vrep().vertices;
          for (const auto& v : vs) c = add(c, v);
          return scale(c, Rational(1, static_cast<long>(vs.size())));
        }();
        out.push_back(check_moreau_monotone(f.u, centre, ts));
      }
    }
    return out;
  });
}

void staircase_jobs(std::vector<Job>& jobs, std::uint64_t seed, std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t k : {1, 2}) {
      jobs.push_back([seed, j, k] {
        Rng g(seed + j);
        const GrowthFunction zeta = j == 0 ? staircase_zeta() : random_compact_zeta(seed + j);
        const long top = static_cast<long>(zeta.breakpoints().size()) - 2;
        const Rational t = Rational(rand_int(g, 0, top)) + rand_rat(g, 0, 4, 8);
        std::vector<LawReport> out;
        for (auto r : staircase_limit_check(zeta, k, t, steps_down(8)).reports) {
          r.seed = seed + j;
          out.push_back(r);
        }
        for (std::size_t i = 0; i <= k; ++i) {
          std::vector<Rational> h;
          for (std::size_t c = 0; c < k; ++c) h.push_back(Rational(static_cast<long>(c + 1), 2));
          const PwaConvex u = staircase_fixture(k, h, i);
          if (i == 0) {
            Rational prod = factorial(k);
            for (const auto& x : h) prod *= x;
            const Rational t0(1, 4);
            const Number lhs = integral_valuation(zeta, add_constant(u, t0));
            const Number rhs = psi_from_zeta(zeta, k)(t0) * Number(1 / prod);
            out.push_back(compare_values("staircase.base", lhs, rhs, 0.0, seed + j));
          }
          if (i == k) {
            out.push_back(check_flag("staircase.top", u == indicator_function(unit_cube(k), 0), seed + j));
          }
        }
        return out;
      });
    }
  }
}

void conjugacy_jobs(std::vector<Job>& jobs, std::uint64_t seed, std::size_t count) {
  for (std::size_t n : {2, 3}) {
    const auto corpus = fixture_corpus(n, count, seed);
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      const PwaConvex u = corpus[j].u;
      const PwaConvex v = corpus[(j + 1) % corpus.size()].u;
      jobs.push_back([seed, j, n, u, v] {
        const std::uint64_t s = seed + j;
        const auto points = rational_grid(s, n, 100);
        return std::vector<LawReport>{check_biconjugation(u, s), check_inf_conv_conjugate(u, v, points, s),
                                      check_epi_scale_conjugate(u, Rational(1, 2), points, s),
                                      check_epi_scale_conjugate(u, Rational(3), points, s), check_cone_bound(u, s)};
      });
    }
  }
}

std::size_t thread_count_or(std::size_t threads) { return std::max<std::size_t>(1, threads); }

}  // namespace

std::vector<LawReport> run_suite(const std::string& name, std::uint64_t seed, std::size_t count,
                                 std::size_t threads) {
  std::vector<Job> jobs;
  if (name == "valuation") valuation_jobs(jobs, seed, count);
  else if (name == "invariance") invariance_jobs(jobs, seed, count);
  else if (name == "growth") growth_jobs(jobs, seed, count);
  else if (name == "convergence") convergence_jobs(jobs, seed, count);
  else if (name == "staircase") staircase_jobs(jobs, seed, count);
  else if (name == "conjugacy") conjugacy_jobs(jobs, seed, count);
  else throw InvalidArgument("unknown suite: " + name);

  std::vector<std::vector<LawReport>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        results[j] = jobs[j]();
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(thread_count_or(threads), std::max<std::size_t>(1, jobs.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<LawReport> out;
  for (auto& r : results) {
    for (auto& x : r) out.push_back(std::move(x));
  }
  std::stable_sort(out.begin(), out.end(), [](const LawReport& a, const LawReport& b) {
    return a.law != b.law ? a.law < b.law : a.seed < b.seed;
  });
  return out;
}

}  // namespace convval
