#pragma once

#include <cstdint>
#include <vector>

#include "convval/convex_function.hpp"

namespace convval {

/// u*(y) = sup_x <y, x> - u(x). Vertices (x_v, t_v) of epi u give the pieces
/// <y, x_v> - t_v; rays (r, s) give the domain rows <y, r> <= s.
ClosedPwa conjugate(const ClosedPwa& u);

/// u** == u exactly.
bool biconjugate_check(const ClosedPwa& u);

/// Epigraph of u □ v is the Minkowski sum of the epigraphs.
PwaConvex inf_convolution(const PwaConvex& u, const PwaConvex& v);
ClosedPwa inf_convolution(const ClosedPwa& u, const ClosedPwa& v);

/// x -> t u(x / t). Throws InvalidArgument unless t > 0.
PwaConvex epi_scale(const PwaConvex& u, const Rational& t);
ClosedPwa epi_scale(const ClosedPwa& u, const Rational& t);

inline constexpr std::uint64_t kDefaultMoreauBudget = 1000000;

/// inf_y u(y) + |x - y|^2 / (2t), exact. Each affine cell is solved by
/// enumerating linearly independent active sets; more than `budget` subsets
/// in total throws BudgetExceeded.
Rational moreau_eval(const ClosedPwa& u, const Rational& t, const Vec& x,
                     std::uint64_t budget = kDefaultMoreauBudget);

/// u(x) > a|x| + b for all x, with a > 0.
struct ConeBound {
  Rational a;
  Rational b;

  friend bool operator==(const ConeBound&, const ConeBound&) = default;
};

/// Bound read off the conjugate: the cube of half-width 2a sits inside
/// dom u*, and b = -(max of u* on the cube of half-width a) - 1.
ConeBound cone_bound(const PwaConvex& u);

/// Exact check at every epigraph vertex and recession ray.
bool certify_cone_bound(const PwaConvex& u, const ConeBound& c);

/// Smallest a and b over the members; valid for each of them.
ConeBound uniform_cone_bound(const std::vector<PwaConvex>& us);

}  // namespace convval
