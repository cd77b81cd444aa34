#include "convval/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "convval/errors.hpp"

namespace convval {

namespace {

Rational probe_volume(const PwaConvex& u, const Rational& t) {
  HRep h{u.dimension(), {}, false};
  for (const auto& p : u.pieces()) h.rows.push_back(Halfspace{p.slope, t - p.intercept});
  const auto& dom = u.domain().hrep().rows;
  h.rows.insert(h.rows.end(), dom.begin(), dom.end());
  return volume(h);
}

Polynomial fit(const PwaConvex& u, const std::vector<Rational>& xs) {
  std::vector<Rational> ys;
  for (const auto& x : xs) ys.push_back(probe_volume(u, x));
  return interpolate(xs, ys);
}

// ∫ zeta dV over (from, inf), `from` >= t_min, excluding the atom.
Number continuous_part(const PiecewisePoly& zeta, const LevelVolumeProfile& p, const Rational& from) {
  Number total = Rational(0);
  const std::size_t m = p.pieces.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Rational lo = std::max(from, p.breakpoints[i]);
    if (lo >= p.breakpoints[i + 1]) continue;
    total += integrate_against(zeta, p.pieces[i].derivative(), lo, p.breakpoints[i + 1]);
  }
  const Polynomial df = p.final.derivative();
  if (!df.is_zero()) total += integrate_against(zeta, df, std::max(from, p.breakpoints.back()), std::nullopt);
  return total;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Rational LevelVolumeProfile::volume_at(const Rational& t) const {
  if (t < t_min) return 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (t <= breakpoints[i + 1]) return pieces[i](t);
  }
  return final(t);
}

LevelVolumeProfile level_volume_profile(const PwaConvex& u) {
  const std::size_t n = u.dimension();
  std::set<Rational> levels;
  for (const auto& v : u.epigraph().vrep().vertices) levels.insert(v.back());
  LevelVolumeProfile p;
  p.n = n;
  p.breakpoints.assign(levels.begin(), levels.end());
  p.t_min = p.breakpoints.front();
  p.atom = volume(min_value(u).argmin);
  const Rational nn(static_cast<long>(n));
  for (std::size_t i = 0; i + 1 < p.breakpoints.size(); ++i) {
    const Rational a = p.breakpoints[i], b = p.breakpoints[i + 1];
    std::vector<Rational> xs;
    for (std::size_t j = 0; j <= n; ++j) xs.push_back(a + (b - a) * Rational(static_cast<long>(j)) / nn);
    p.pieces.push_back(fit(u, xs));
  }
  const Rational last = p.breakpoints.back();
  std::vector<Rational> xs;
  for (std::size_t j = 0; j <= n; ++j) xs.push_back(last + Rational(static_cast<long>(j)));
  p.final = fit(u, xs);
  for (long extra : {static_cast<long>(n) + 1, static_cast<long>(n) + 2}) {
    if (p.final(last + extra) != probe_volume(u, last + extra)) {
      throw std::logic_error("level_volume_profile: final polynomial failed validation");
    }
  }
  const Polynomial& first = p.pieces.empty() ? p.final : p.pieces.front();
  if (first(p.t_min) != p.atom) throw std::logic_error("level_volume_profile: atom mismatch");
  for (std::size_t i = 0; i < p.pieces.size(); ++i) {
    if (!nonnegative_on(p.pieces[i].derivative(), p.breakpoints[i], p.breakpoints[i + 1])) {
      throw std::logic_error("level_volume_profile: volume decreases");
    }
  }
  if (!nonnegative_on_ray(p.final.derivative(), last)) throw std::logic_error("level_volume_profile: volume decreases");
  return p;
}

Number integral_valuation(const PiecewisePoly& zeta, const LevelVolumeProfile& profile) {
  Number total = Rational(0);
  if (profile.atom != 0) total = zeta(profile.t_min) * Number(profile.atom);
  return total + continuous_part(zeta, profile, profile.t_min);
}

Number integral_valuation(const PiecewisePoly& zeta, const PwaConvex& u) {
  return integral_valuation(zeta, level_volume_profile(u));
}

Number tail_integral(const PiecewisePoly& zeta, const LevelVolumeProfile& profile, const Rational& t) {
  if (t < profile.t_min) throw InvalidArgument("tail_integral: level below the minimum");
  return continuous_part(zeta, profile, t);
}

Number min_valuation(const PiecewisePoly& zeta0, const PwaConvex& u) { return zeta0(min_value(u).t_min); }

Number combined_valuation(const PiecewisePoly& zeta0, const PiecewisePoly& zetan, const LevelVolumeProfile& profile) {
  return zeta0(profile.t_min) + integral_valuation(zetan, profile);
}

Number combined_valuation(const PiecewisePoly& zeta0, const PiecewisePoly& zetan, const PwaConvex& u) {
  return combined_valuation(zeta0, zetan, level_volume_profile(u));
}

TailBound tail_bound(const GrowthFunction& zeta, const LevelVolumeProfile& profile, double eps) {
  const auto top = zeta.support_sup();
  if (!zeta.nonnegative()) {
    if (!top) throw InvalidArgument("tail_bound: signed growth function with unbounded support");
    const Rational t0 = std::max(profile.t_min, *top);
    return TailBound{t0, tail_integral(zeta, profile, t0)};
  }
  // Nonnegative zeta: the tail is nonincreasing in t.
  Rational step = 1;
  for (int k = 0; k < 200; ++k) {
    const Rational t = k == 0 ? profile.t_min : profile.t_min + step;
    const Number tail = tail_integral(zeta, profile, t);
    if (std::abs(tail.to_double()) < eps) return TailBound{t, tail};
    if (k > 0) step *= 2;
  }
  throw std::logic_error("tail_bound: no level found");
}

LawReport check_derivative_relation(const PiecewisePoly& zeta, std::size_t n) {
  const PiecewisePoly back = signed_scaled_derivative(psi_from_zeta(zeta, n), n);
  const bool ok = back == zeta;
  return check_flag("derivative_relation n=" + std::to_string(n), ok, 0, digest_of({canonical_text(zeta)}),
                    ok ? "" : canonical_text(back));
}

LawReport check_psi_vanishes(const PiecewisePoly& zeta, std::size_t n) {
  const auto top = zeta.support_sup();
  if (!top) throw InvalidArgument("check_psi_vanishes: growth function has a tail");
  const PsiFunction psi = psi_from_zeta(zeta, n);
  bool ok = !psi.tail();
  std::string witness;
  const auto& b = psi.breakpoints();
  for (std::size_t i = 0; i < psi.pieces().size(); ++i) {
    if (b[i] >= *top && !psi.pieces()[i].is_zero()) {
      ok = false;
      witness = to_string(b[i]);
    }
  }
  return check_flag("psi_vanishes n=" + std::to_string(n), ok, 0, digest_of({canonical_text(zeta)}), witness);
}

LawReport check_moment_finiteness_of_derivative(const PsiFunction& psi, std::size_t n,
                                                const std::optional<PiecewisePoly>& zeta) {
  const Number left = moment(signed_scaled_derivative(psi, n), n - 1);
  const std::string law = "derivative_moment n=" + std::to_string(n);
  const std::string digest = digest_of({canonical_text(psi)});
  if (zeta) {
    const Number right = moment(*zeta, n - 1);
    const double tol = left.is_exact() && right.is_exact() ? 0.0 : 1e-10;
    return compare_values(law, left, right, tol, 0, digest);
  }
  return compare_values(law, left, left, 0.0, 0, digest, std::isfinite(left.to_double()) ? "" : "infinite");
}

GrowthSamples extract_growth(const ValuationFn& z, std::size_t n, const std::vector<Rational>& tgrid) {
  GrowthSamples out;
  const Polyhedron origin = Polyhedron::point(zeros(n));
  const Polyhedron q = Polyhedron::box(zeros(n), Vec(n, Rational(1)));
  for (const auto& t : tgrid) {
    const Number p0 = z(cone_function(origin, t));
    out.t.push_back(t);
    out.psi0.push_back(p0);
    out.psin.push_back((z(cone_function(q, t)) - p0) / Number(volume(q)));
  }
  return out;
}

McEstimate mc_oracle(const PiecewisePoly& zeta, const PwaConvex& u, std::uint64_t samples, std::uint64_t seed,
                     const std::optional<Rational>& truncation) {
  if (samples == 0) throw InvalidArgument("mc_oracle: need at least one sample");
  const std::size_t n = u.dimension();
  if (!u.domain().is_bounded() && !truncation) {
    throw UnboundedInput("mc_oracle: unbounded domain needs a truncation level");
  }
  const Polyhedron region = truncation ? sublevel(u, *truncation) : u.domain();
  McEstimate out;
  if (region.is_empty()) return out;
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  for (const auto& v : region.vrep().vertices) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], to_double(v[i]));
      hi[i] = std::max(hi[i], to_double(v[i]));
    }
  }
  double box = 1.0;
  for (std::size_t i = 0; i < n; ++i) box *= hi[i] - lo[i];
  if (box == 0.0) return out;

  struct Row {
    std::vector<double> a;
    double b;
  };
  auto to_rows = [&](const std::vector<Halfspace>& hs) {
    std::vector<Row> rows;
    for (const auto& h : hs) {
      Row r{{}, to_double(h.offset)};
      for (const auto& c : h.normal) r.a.push_back(to_double(c));
      rows.push_back(std::move(r));
    }
    return rows;
  };
  const auto dom = to_rows(u.domain().hrep().rows);
  std::vector<Row> pieces;
  for (const auto& p : u.pieces()) {
    Row r{{}, to_double(p.intercept)};
    for (const auto& c : p.slope) r.a.push_back(to_double(c));
    pieces.push_back(std::move(r));
  }
  const double cut = truncation ? to_double(*truncation) : INFINITY;

  std::mt19937_64 rng(seed);
  std::vector<double> x(n);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    for (std::size_t i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * uniform01(rng);
    auto dotd = [&](const Row& r) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += r.a[i] * x[i];
      return s;
    };
    bool inside = true;
    for (const auto& r : dom) {
      if (dotd(r) > r.b) {
        inside = false;
        break;
      }
    }
    double value = 0.0;
    if (inside) {
      double ux = -INFINITY;
      for (const auto& r : pieces) ux = std::max(ux, dotd(r) + r.b);
      if (ux <= cut) value = zeta.eval_double(ux);
    }
    sum += value;
    sum2 += value * value;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum2 / static_cast<double>(samples) - mean * mean);
  out.estimate = box * mean;
  out.std_error = box * std::sqrt(var / static_cast<double>(samples));
  return out;
}

}  // namespace convval
