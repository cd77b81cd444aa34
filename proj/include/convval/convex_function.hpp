#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "convval/polyhedron.hpp"
#include "convval/rational.hpp"

namespace convval {

/// Value in (-inf, +inf]; only +inf is representable as infinite.
struct Extended {
  bool finite = true;
  Rational value;

  static Extended infinity() { return Extended{false, Rational(0)}; }
  static Extended of(Rational v) { return Extended{true, std::move(v)}; }

  friend bool operator==(const Extended&, const Extended&) = default;
};

std::string to_string(const Extended& v);

/// x -> <slope, x> + intercept.
struct AffinePiece {
  Vec slope;
  Rational intercept;

  Rational operator()(const Vec& x) const { return dot(slope, x) + intercept; }
  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

/// Proper closed piecewise-affine convex function, stored through its
/// epigraph in R^{n+1}. Pieces and domain rows are read off the canonical
/// epigraph H-rep, so redundant pieces never survive and equal functions
/// have identical representations. Coercivity is not required; conjugates
/// live here.
class ClosedPwa {
 public:
  ClosedPwa() = default;

  /// max_i piece_i on the domain, +inf elsewhere. Throws EmptyDomain when
  /// the domain is empty and InvalidArgument when there are no pieces.
  static ClosedPwa make(const std::vector<AffinePiece>& pieces, const HRep& domain);

  /// `epi` must be an epigraph: upward closed and bounded below on every
  /// vertical line it meets.
  static ClosedPwa from_epigraph(Polyhedron epi);

  std::size_t dimension() const { return n_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const Polyhedron& domain() const { return domain_; }
  const Polyhedron& epigraph() const { return epi_; }

  Extended eval(const Vec& x) const;

  /// All sublevel sets bounded: epigraph without lines, every ray climbs.
  bool is_coercive() const;

  friend bool operator==(const ClosedPwa& a, const ClosedPwa& b) { return a.epi_ == b.epi_; }

 private:
  Polyhedron epi_;
  Polyhedron domain_;
  std::vector<AffinePiece> pieces_;
  std::size_t n_ = 0;
};

/// ClosedPwa with the coercivity invariant.
class PwaConvex : public ClosedPwa {
 public:
  PwaConvex() = default;

  /// Throws NotCoercive, EmptyDomain or InvalidArgument.
  static PwaConvex make(const std::vector<AffinePiece>& pieces, const HRep& domain);
  static PwaConvex from_epigraph(Polyhedron epi);
  /// Throws NotCoercive if `f` is not coercive.
  static PwaConvex from_closed(const ClosedPwa& f);

 private:
  explicit PwaConvex(ClosedPwa f) : ClosedPwa(std::move(f)) {}
};

struct MinValue {
  Rational t_min;
  Polyhedron argmin;
};

MinValue min_value(const PwaConvex& u);

/// {x : u(x) <= t}; empty below the minimum, bounded for coercive u.
Polyhedron sublevel(const ClosedPwa& u, const Rational& t);

/// Pointwise maximum. Throws EmptyDomain when the domains are disjoint.
PwaConvex sup(const PwaConvex& u, const PwaConvex& v);

/// Pointwise minimum when it is convex. Throws NotConvexMin carrying a
/// point x with min(u, v)(x) greater than the convex hull function at x.
PwaConvex inf_if_convex(const PwaConvex& u, const PwaConvex& v);

/// u <= v everywhere (epi v inside epi u).
bool pointwise_leq(const ClosedPwa& u, const ClosedPwa& v);

/// u + s.
PwaConvex add_constant(const PwaConvex& u, const Rational& s);

/// Gauge of K plus t; its epigraph is (0, t) + pos(K x {1}). Throws
/// InvalidArgument unless 0 is in K, UnboundedInput for unbounded K.
PwaConvex cone_function(const Polyhedron& k, const Rational& t);

/// t on K, +inf off K. Throws EmptyInput or UnboundedInput.
PwaConvex indicator_function(const Polyhedron& k, const Rational& t);

/// x -> u(phi^{-1}(x - tau)) + shift. Throws NotUnimodular unless det phi = 1.
PwaConvex transform(const PwaConvex& u, const Mat& phi, const Vec& tau, const Rational& shift);

struct Cell {
  Polyhedron region;
  std::size_t piece_u = 0;
  std::size_t piece_v = 0;
};

/// Cells of dom u ∩ dom v on which both functions are affine. Every cell
/// has the affine dimension of the common domain.
struct CellComplex {
  std::vector<Cell> cells;
};

CellComplex common_refinement(const ClosedPwa& u, const ClosedPwa& v);

/// Cells of dom u on which u is affine, tagged with the active piece.
std::vector<std::pair<Polyhedron, std::size_t>> affine_cells(const ClosedPwa& u);

struct LevelDistance {
  double distance = 0.0;
  /// Levels where at least one sublevel set was empty.
  std::vector<Rational> skipped;
};

/// Largest Hausdorff distance between corresponding sublevel sets.
LevelDistance level_hausdorff_distance(const PwaConvex& u, const PwaConvex& v,
                                       const std::vector<Rational>& levels);

}  // namespace convval
