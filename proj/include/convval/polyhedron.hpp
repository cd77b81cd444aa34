#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "convval/rational.hpp"

namespace convval {

/// The closed halfspace <normal, x> <= offset.
struct Halfspace {
  Vec normal;
  Rational offset;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

struct HRep {
  std::size_t dim = 0;
  std::vector<Halfspace> rows;
  bool empty = false;

  friend bool operator==(const HRep&, const HRep&) = default;
};

/// Vertices, extreme rays and a lineality basis. Lines only occur for
/// polyhedra that contain a full affine line (conjugates of functions with
/// lower-dimensional domain, for example).
struct VRep {
  std::size_t dim = 0;
  std::vector<Vec> vertices;
  std::vector<Vec> rays;
  std::vector<Vec> lines;
  bool empty = false;

  friend bool operator==(const VRep&, const VRep&) = default;
};

VRep hrep_to_vrep(const HRep& h);
HRep vrep_to_hrep(const VRep& v);

/// Convex polyhedron holding both representations in canonical form:
/// irredundant, primitive-integer halfspaces sorted lexicographically,
/// implicit equalities in reduced echelon form, sorted vertices and rays.
/// Two polyhedra describe the same set iff their representations compare
/// equal.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_hrep(const HRep& h);
  static Polyhedron from_vrep(const VRep& v);
  static Polyhedron whole_space(std::size_t dim);
  static Polyhedron empty_set(std::size_t dim);
  static Polyhedron box(const Vec& lo, const Vec& hi);
  static Polyhedron point(const Vec& x);

  std::size_t dimension() const { return h_.dim; }
  const HRep& hrep() const { return h_; }
  const VRep& vrep() const { return v_; }

  bool is_empty() const { return h_.empty; }
  bool is_bounded() const { return bounded_; }
  bool is_full_dimensional() const { return full_dim_; }
  /// Dimension of the affine hull; -1 for the empty set.
  int affine_dimension() const { return affine_dim_; }

  bool contains(const Vec& x) const;
  bool contains(const Polyhedron& other) const;

  /// Indices of rows of hrep() that hold with equality on the whole set.
  std::vector<std::size_t> implicit_equalities() const;

  /// Checks that every generator satisfies every halfspace and every
  /// halfspace is tight somewhere. Representations built by this class
  /// always pass; exposed for tests.
  bool cross_validate() const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.h_ == b.h_ && a.v_ == b.v_;
  }

 private:
  static Polyhedron assemble(HRep h, VRep v);

  HRep h_;
  VRep v_;
  bool bounded_ = true;
  bool full_dim_ = false;
  int affine_dim_ = -1;
};

Polyhedron intersect(const HRep& a, const HRep& b);
Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);

Polyhedron minkowski_sum(const VRep& a, const VRep& b);
Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b);

/// Exact Lebesgue volume in the ambient dimension; 0 for lower-dimensional
/// sets. Throws UnboundedInput for unbounded polyhedra.
Rational volume(const Polyhedron& p);

/// Volume straight from an H-representation (redundant rows allowed). Skips
/// canonicalization, so it is the fast path for level-set sweeps.
Rational volume(const HRep& h);

/// Exact squared Euclidean distance from x to a bounded nonempty polyhedron.
Rational squared_distance(const Vec& x, const Polyhedron& p);

/// Hausdorff distance between bounded nonempty polyhedra. Exact up to the
/// final square root.
double hausdorff_distance(const Polyhedron& k, const Polyhedron& l);

/// Image under an invertible linear map.
Polyhedron apply_linear(const Polyhedron& p, const Mat& m);
Polyhedron translate(const Polyhedron& p, const Vec& v);
/// Scaling by a positive factor about the origin.
Polyhedron dilate(const Polyhedron& p, const Rational& factor);

/// Product of `steps` random elementary integer shears; determinant 1 and
/// deterministic per seed.
Mat random_unimodular(std::uint64_t seed, std::size_t n, std::size_t steps);

bool relative_interior_contains(const Polyhedron& p, const Vec& x);

/// All nonempty faces of a bounded polyhedron as sorted vertex-index lists
/// (the polyhedron itself included).
std::vector<std::vector<std::size_t>> faces(const Polyhedron& p);

}  // namespace convval
