#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "convval/convex_function.hpp"
#include "convval/growth.hpp"
#include "convval/law_report.hpp"

namespace convval {

/// t -> V_n({u <= t}) for a coercive u: zero below t_min, `pieces[i]` on
/// [breakpoints[i], breakpoints[i+1]], `final` from the last breakpoint on.
/// The jump at t_min equals `atom`, the volume of the argmin.
struct LevelVolumeProfile {
  std::size_t n = 0;
  Rational t_min;
  Rational atom;
  std::vector<Rational> breakpoints;
  std::vector<Polynomial> pieces;
  Polynomial final;

  Rational volume_at(const Rational& t) const;
};

/// Breakpoints are the levels of the epigraph vertices. Each interval is
/// interpolated from n + 1 exact volumes; the unbounded interval is checked
/// at two further levels. Throws std::logic_error if a check fails.
LevelVolumeProfile level_volume_profile(const PwaConvex& u);

/// Z_zeta(u) = ∫_{dom u} zeta(u(x)) dx = zeta(t_min) atom + ∫ zeta dV.
Number integral_valuation(const PiecewisePoly& zeta, const LevelVolumeProfile& profile);
Number integral_valuation(const PiecewisePoly& zeta, const PwaConvex& u);

/// ∫_{u > t} zeta(u(x)) dx for t >= t_min.
Number tail_integral(const PiecewisePoly& zeta, const LevelVolumeProfile& profile, const Rational& t);

/// zeta0(min u).
Number min_valuation(const PiecewisePoly& zeta0, const PwaConvex& u);

Number combined_valuation(const PiecewisePoly& zeta0, const PiecewisePoly& zetan, const LevelVolumeProfile& profile);
Number combined_valuation(const PiecewisePoly& zeta0, const PiecewisePoly& zetan, const PwaConvex& u);

struct TailBound {
  Rational t0;
  Number tail_at_t0;
};

/// Some t0 with |tail_integral(t)| < eps for every t >= t0. Requires a
/// nonnegative zeta or one with compact support.
TailBound tail_bound(const GrowthFunction& zeta, const LevelVolumeProfile& profile, double eps);

/// ((-1)^n / n!) psi_n^{(n)} == zeta, piece by piece.
LawReport check_derivative_relation(const PiecewisePoly& zeta, std::size_t n);

/// psi_n vanishes identically from the top of the support of zeta on.
LawReport check_psi_vanishes(const PiecewisePoly& zeta, std::size_t n);

/// Moment of order n - 1 of ((-1)^n / n!) psi^{(n)}; compared against the
/// same moment of `zeta` when given, otherwise only finiteness is checked.
LawReport check_moment_finiteness_of_derivative(const PsiFunction& psi, std::size_t n,
                                                const std::optional<PiecewisePoly>& zeta = std::nullopt);

using ValuationFn = std::function<Number(const PwaConvex&)>;

struct GrowthSamples {
  std::vector<Rational> t;
  std::vector<Number> psi0;
  std::vector<Number> psin;
};

/// psi0(t) = Z(l_{0} + t) and psin(t) = Z(l_Q + t) - psi0(t) with Q = [0,1]^n.
GrowthSamples extract_growth(const ValuationFn& z, std::size_t n, const std::vector<Rational>& tgrid);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Uniform sampling over the bounding box of dom u, or of {u <= truncation}
/// when given (then only that sublevel set is integrated). Throws
/// UnboundedInput for an unbounded domain without truncation.
McEstimate mc_oracle(const PiecewisePoly& zeta, const PwaConvex& u, std::uint64_t samples, std::uint64_t seed,
                     const std::optional<Rational>& truncation = std::nullopt);

}  // namespace convval
