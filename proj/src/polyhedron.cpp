#include "convval/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "convval/errors.hpp"
#include "double_description.hpp"

namespace convval {

namespace {

using Bits = boost::dynamic_bitset<>;

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool row_less(const Halfspace& a, const Halfspace& b) {
  if (a.normal != b.normal) return lex_less(a.normal, b.normal);
  return a.offset < b.offset;
}

HRep empty_hrep(std::size_t dim) {
  HRep h;
  h.dim = dim;
  h.empty = true;
  h.rows.push_back(Halfspace{zeros(dim), Rational(-1)});
  return h;
}

VRep empty_vrep(std::size_t dim) {
  VRep v;
  v.dim = dim;
  v.empty = true;
  return v;
}

void check_rows(const HRep& h) {
  for (const auto& r : h.rows) {
    if (r.normal.size() != h.dim) throw DimensionMismatch("halfspace dimension mismatch");
  }
}

void check_generators(const VRep& v) {
  auto ok = [&](const std::vector<Vec>& g) {
    return std::all_of(g.begin(), g.end(), [&](const Vec& x) { return x.size() == v.dim; });
  };
  if (!ok(v.vertices) || !ok(v.rays) || !ok(v.lines)) {
    throw DimensionMismatch("generator dimension mismatch");
  }
}

int affine_dimension_of(const std::vector<Vec>& points, const std::vector<Vec>& dirs) {
  if (points.empty()) return -1;
  Mat m;
  for (std::size_t i = 1; i < points.size(); ++i) m.push_back(sub(points[i], points[0]));
  for (const auto& d : dirs) m.push_back(d);
  return static_cast<int>(rank(std::move(m)));
}

int affine_dimension_of(const std::vector<Vec>& verts, const Bits& subset) {
  Mat m;
  const auto first = subset.find_first();
  if (first == Bits::npos) return -1;
  for (auto i = subset.find_next(first); i != Bits::npos; i = subset.find_next(i)) {
    m.push_back(sub(verts[i], verts[first]));
  }
  return static_cast<int>(rank(std::move(m)));
}

bool satisfies(const Halfspace& h, const Vec& x) { return dot(h.normal, x) <= h.offset; }

std::vector<Bits> tight_sets(const std::vector<Vec>& verts, const std::vector<Halfspace>& rows) {
  std::vector<Bits> tight(rows.size(), Bits(verts.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (dot(rows[j].normal, verts[i]) == rows[j].offset) tight[j].set(i);
    }
  }
  return tight;
}

// Facets of the k-dimensional face `s`, each a vertex subset tight on some row.
std::vector<Bits> facets_of(const Bits& s, int k, const std::vector<Vec>& verts,
                            const std::vector<Bits>& tight) {
  std::vector<Bits> out;
  std::set<Bits> seen;
  for (const auto& t : tight) {
    Bits f = s & t;
    if (f == s || static_cast<int>(f.count()) < k) continue;
    if (seen.count(f)) continue;
    seen.insert(f);
    if (affine_dimension_of(verts, f) == k - 1) out.push_back(std::move(f));
  }
  return out;
}

// Pulling triangulation: every simplex is the first vertex of `s` joined
// with a simplex of a facet that avoids it.
void triangulate(const Bits& s, int k, const std::vector<Vec>& verts,
                 const std::vector<Bits>& tight, std::vector<std::size_t>& prefix,
                 std::vector<std::vector<std::size_t>>& out) {
  const auto apex = s.find_first();
  if (k == 0) {
    prefix.push_back(apex);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  prefix.push_back(apex);
  for (const auto& f : facets_of(s, k, verts, tight)) {
    if (f.test(apex)) continue;
    triangulate(f, k - 1, verts, tight, prefix, out);
  }
  prefix.pop_back();
}

Rational triangulated_volume(const std::vector<Vec>& verts, const std::vector<Halfspace>& rows,
                             std::size_t dim) {
  const auto tight = tight_sets(verts, rows);
  Bits all(verts.size());
  all.set();
  std::vector<std::vector<std::size_t>> simplices;
  std::vector<std::size_t> prefix;
  triangulate(all, static_cast<int>(dim), verts, tight, prefix, simplices);
  Rational total = 0;
  for (const auto& s : simplices) {
    Mat m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(sub(verts[s[i]], verts[s[0]]));
    total += abs(determinant(std::move(m)));
  }
  Rational fact = 1;
  for (std::size_t i = 2; i <= dim; ++i) fact *= i;
  return total / fact;
}

void sort_vrep(VRep& v) {
  std::sort(v.vertices.begin(), v.vertices.end(), lex_less);
  std::sort(v.rays.begin(), v.rays.end(), lex_less);
}

}  // namespace

VRep hrep_to_vrep(const HRep& h) {
  check_rows(h);
  if (h.empty) return empty_vrep(h.dim);
  const std::size_t d = h.dim;
  std::vector<IVec> rows;
  rows.reserve(h.rows.size() + 1);
  for (const auto& r : h.rows) {
    Vec z = r.normal;
    z.push_back(-r.offset);
    rows.push_back(primitive(z));
  }
  IVec lambda_row(d + 1, Integer(0));
  lambda_row[d] = -1;
  rows.push_back(lambda_row);

  const auto gens = detail::cone_generators(rows, d + 1);
  VRep v;
  v.dim = d;
  for (const auto& l : gens.lines) {
    v.lines.push_back(to_rational(IVec(l.begin(), l.end() - 1)));
  }
  for (const auto& z : gens.rays) {
    if (z[d] > 0) {
      Vec x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = Rational(z[i], z[d]);
      v.vertices.push_back(std::move(x));
    } else {
      v.rays.push_back(to_rational(IVec(z.begin(), z.end() - 1)));
    }
  }
  if (v.vertices.empty()) return empty_vrep(d);
  sort_vrep(v);
  return v;
}

HRep vrep_to_hrep(const VRep& v) {
  check_generators(v);
  if (v.empty || v.vertices.empty()) return empty_hrep(v.dim);
  const std::size_t d = v.dim;
  std::vector<IVec> rows;
  for (const auto& x : v.vertices) {
    Vec z = x;
    z.push_back(Rational(-1));
    rows.push_back(primitive(z));
  }
  for (const auto& r : v.rays) {
    Vec z = r;
    z.push_back(Rational(0));
    rows.push_back(primitive(z));
  }
  for (const auto& l : v.lines) {
    Vec z = l;
    z.push_back(Rational(0));
    rows.push_back(primitive(z));
    rows.push_back(primitive(scale(z, Rational(-1))));
  }

  const auto gens = detail::cone_generators(rows, d + 1);
  HRep h;
  h.dim = d;
  for (const auto& l : gens.lines) {
    const Vec z = to_rational(l);
    Halfspace row{Vec(z.begin(), z.end() - 1), z.back()};
    h.rows.push_back(row);
    h.rows.push_back(Halfspace{scale(row.normal, Rational(-1)), -row.offset});
  }
  for (const auto& g : gens.rays) {
    const Vec z = to_rational(g);
    Vec normal(z.begin(), z.end() - 1);
    if (is_zero(normal)) continue;
    h.rows.push_back(Halfspace{std::move(normal), z.back()});
  }
  std::sort(h.rows.begin(), h.rows.end(), row_less);
  return h;
}

Polyhedron Polyhedron::assemble(HRep h, VRep v) {
  Polyhedron p;
  p.h_ = std::move(h);
  p.v_ = std::move(v);
  if (p.h_.empty || p.v_.empty) {
    p.h_ = empty_hrep(p.h_.dim);
    p.v_ = empty_vrep(p.h_.dim);
    p.bounded_ = true;
    p.full_dim_ = false;
    p.affine_dim_ = -1;
    return p;
  }
  p.bounded_ = p.v_.rays.empty() && p.v_.lines.empty();
  std::vector<Vec> dirs = p.v_.rays;
  dirs.insert(dirs.end(), p.v_.lines.begin(), p.v_.lines.end());
  p.affine_dim_ = affine_dimension_of(p.v_.vertices, dirs);
  p.full_dim_ = p.affine_dim_ == static_cast<int>(p.h_.dim);
  return p;
}

Polyhedron Polyhedron::from_hrep(const HRep& h) {
  VRep v = hrep_to_vrep(h);
  HRep canon = vrep_to_hrep(v);
  return assemble(std::move(canon), std::move(v));
}

Polyhedron Polyhedron::from_vrep(const VRep& v) {
  HRep h = vrep_to_hrep(v);
  VRep canon = hrep_to_vrep(h);
  return assemble(std::move(h), std::move(canon));
}

Polyhedron Polyhedron::whole_space(std::size_t dim) { return from_hrep(HRep{dim, {}, false}); }

Polyhedron Polyhedron::empty_set(std::size_t dim) {
  return assemble(empty_hrep(dim), empty_vrep(dim));
}

Polyhedron Polyhedron::box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size()) throw DimensionMismatch("box: bound size mismatch");
  HRep h{lo.size(), {}, false};
  for (std::size_t i = 0; i < lo.size(); ++i) {
    h.rows.push_back(Halfspace{unit_vector(lo.size(), i), hi[i]});
    h.rows.push_back(Halfspace{scale(unit_vector(lo.size(), i), Rational(-1)), -lo[i]});
  }
  return from_hrep(h);
}

Polyhedron Polyhedron::point(const Vec& x) {
  VRep v;
  v.dim = x.size();
  v.vertices.push_back(x);
  return from_vrep(v);
}

bool Polyhedron::contains(const Vec& x) const {
  if (x.size() != h_.dim) throw DimensionMismatch("contains: point dimension mismatch");
  if (h_.empty) return false;
  return std::all_of(h_.rows.begin(), h_.rows.end(),
                     [&](const Halfspace& r) { return satisfies(r, x); });
}

bool Polyhedron::contains(const Polyhedron& other) const {
  if (other.dimension() != h_.dim) throw DimensionMismatch("contains: dimension mismatch");
  if (other.is_empty()) return true;
  if (is_empty()) return false;
  for (const auto& r : h_.rows) {
    for (const auto& x : other.v_.vertices) {
      if (!satisfies(r, x)) return false;
    }
    for (const auto& d : other.v_.rays) {
      if (dot(r.normal, d) > 0) return false;
    }
    for (const auto& d : other.v_.lines) {
      if (dot(r.normal, d) != 0) return false;
    }
  }
  return true;
}

std::vector<std::size_t> Polyhedron::implicit_equalities() const {
  std::vector<std::size_t> out;
  if (is_empty()) return out;
  for (std::size_t j = 0; j < h_.rows.size(); ++j) {
    const auto& r = h_.rows[j];
    bool eq = std::all_of(v_.vertices.begin(), v_.vertices.end(),
                          [&](const Vec& x) { return dot(r.normal, x) == r.offset; });
    eq = eq && std::all_of(v_.rays.begin(), v_.rays.end(),
                           [&](const Vec& d) { return dot(r.normal, d) == 0; });
    eq = eq && std::all_of(v_.lines.begin(), v_.lines.end(),
                           [&](const Vec& d) { return dot(r.normal, d) == 0; });
    if (eq) out.push_back(j);
  }
  return out;
}

bool Polyhedron::cross_validate() const {
  if (is_empty()) return v_.empty;
  for (const auto& r : h_.rows) {
    bool touched = false;
    for (const auto& x : v_.vertices) {
      const Rational s = dot(r.normal, x);
      if (s > r.offset) return false;
      touched = touched || s == r.offset;
    }
    for (const auto& d : v_.rays) {
      if (dot(r.normal, d) > 0) return false;
    }
    for (const auto& d : v_.lines) {
      if (dot(r.normal, d) != 0) return false;
    }
    if (!touched) return false;
  }
  return true;
}

Polyhedron intersect(const HRep& a, const HRep& b) {
  if (a.dim != b.dim) throw DimensionMismatch("intersect: dimension mismatch");
  if (a.empty || b.empty) return Polyhedron::empty_set(a.dim);
  HRep h{a.dim, a.rows, false};
  h.rows.insert(h.rows.end(), b.rows.begin(), b.rows.end());
  return Polyhedron::from_hrep(h);
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) { return intersect(a.hrep(), b.hrep()); }

Polyhedron minkowski_sum(const VRep& a, const VRep& b) {
  if (a.dim != b.dim) throw DimensionMismatch("minkowski_sum: dimension mismatch");
  if (a.empty || b.empty || a.vertices.empty() || b.vertices.empty()) {
    return Polyhedron::empty_set(a.dim);
  }
  VRep v;
  v.dim = a.dim;
  for (const auto& x : a.vertices)
    for (const auto& y : b.vertices) v.vertices.push_back(add(x, y));
  v.rays = a.rays;
  v.rays.insert(v.rays.end(), b.rays.begin(), b.rays.end());
  v.lines = a.lines;
  v.lines.insert(v.lines.end(), b.lines.begin(), b.lines.end());
  return Polyhedron::from_vrep(v);
}

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  return minkowski_sum(a.vrep(), b.vrep());
}

Rational volume(const Polyhedron& p) {
  if (!p.is_bounded()) throw UnboundedInput("volume: unbounded polyhedron");
  if (p.is_empty() || !p.is_full_dimensional()) return 0;
  return triangulated_volume(p.vrep().vertices, p.hrep().rows, p.dimension());
}

Rational volume(const HRep& h) {
  const VRep v = hrep_to_vrep(h);
  if (v.empty) return 0;
  if (!v.rays.empty() || !v.lines.empty()) throw UnboundedInput("volume: unbounded polyhedron");
  if (affine_dimension_of(v.vertices, std::vector<Vec>{}) < static_cast<int>(h.dim)) return 0;
  return triangulated_volume(v.vertices, h.rows, h.dim);
}

std::vector<std::vector<std::size_t>> faces(const Polyhedron& p) {
  if (!p.is_bounded()) throw UnboundedInput("faces: unbounded polyhedron");
  std::vector<std::vector<std::size_t>> out;
  if (p.is_empty()) return out;
  const auto& verts = p.vrep().vertices;
  const auto tight = tight_sets(verts, p.hrep().rows);
  Bits all(verts.size());
  all.set();
  std::set<Bits> seen{all};
  std::vector<std::pair<Bits, int>> stack{{all, p.affine_dimension()}};
  while (!stack.empty()) {
    auto [s, k] = stack.back();
    stack.pop_back();
    std::vector<std::size_t> idx;
    for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) idx.push_back(i);
    out.push_back(std::move(idx));
    if (k == 0) continue;
    for (auto& f : facets_of(s, k, verts, tight)) {
      if (seen.insert(f).second) stack.emplace_back(f, k - 1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational squared_distance(const Vec& x, const Polyhedron& p) {
  if (p.is_empty()) throw EmptyInput("squared_distance: empty polyhedron");
  if (!p.is_bounded()) throw UnboundedInput("squared_distance: unbounded polyhedron");
  if (x.size() != p.dimension()) throw DimensionMismatch("squared_distance: dimension mismatch");
  if (p.contains(x)) return 0;
  const auto& verts = p.vrep().vertices;
  std::optional<Rational> best;
  for (const auto& face : faces(p)) {
    const Vec& v0 = verts[face[0]];
    Mat dirs;
    for (std::size_t i = 1; i < face.size(); ++i) dirs.push_back(sub(verts[face[i]], v0));
    rref(dirs);
    Vec proj = v0;
    if (!dirs.empty()) {
      const Vec rhs = mat_vec(dirs, sub(x, v0));
      const auto gram_inv = inverse(mat_mul(dirs, transpose(dirs)));
      const Vec c = mat_vec(*gram_inv, rhs);
      for (std::size_t i = 0; i < dirs.size(); ++i) proj = add(proj, scale(dirs[i], c[i]));
      if (!p.contains(proj)) continue;
    }
    const Rational d2 = norm_squared(sub(x, proj));
    if (!best || d2 < *best) best = d2;
  }
  return *best;
}

double hausdorff_distance(const Polyhedron& k, const Polyhedron& l) {
  if (k.is_empty() || l.is_empty()) throw EmptyInput("hausdorff_distance: empty input");
  if (!k.is_bounded() || !l.is_bounded()) throw UnboundedInput("hausdorff_distance: unbounded input");
  if (k.dimension() != l.dimension()) throw DimensionMismatch("hausdorff_distance: dimension mismatch");
  Rational worst = 0;
  for (const auto& x : k.vrep().vertices) worst = std::max(worst, squared_distance(x, l));
  for (const auto& y : l.vrep().vertices) worst = std::max(worst, squared_distance(y, k));
  return std::sqrt(to_double(worst));
}

Polyhedron apply_linear(const Polyhedron& p, const Mat& m) {
  const std::size_t d = p.dimension();
  if (m.size() != d) throw DimensionMismatch("apply_linear: matrix size mismatch");
  const auto inv = inverse(m);
  if (!inv) throw SingularMatrix("apply_linear: singular matrix");
  if (p.is_empty()) return p;
  const Mat inv_t = transpose(*inv);
  HRep h{d, {}, false};
  for (const auto& r : p.hrep().rows) h.rows.push_back(Halfspace{mat_vec(inv_t, r.normal), r.offset});
  return Polyhedron::from_hrep(h);
}

Polyhedron translate(const Polyhedron& p, const Vec& shift) {
  const std::size_t d = p.dimension();
  if (shift.size() != d) throw DimensionMismatch("translate: vector size mismatch");
  if (p.is_empty()) return p;
  HRep h{d, {}, false};
  for (const auto& r : p.hrep().rows) h.rows.push_back(Halfspace{r.normal, r.offset + dot(r.normal, shift)});
  return Polyhedron::from_hrep(h);
}

Polyhedron dilate(const Polyhedron& p, const Rational& factor) {
  if (factor <= 0) throw InvalidArgument("dilate: factor must be positive");
  if (p.is_empty()) return p;
  HRep h{p.dimension(), {}, false};
  for (const auto& r : p.hrep().rows) h.rows.push_back(Halfspace{r.normal, r.offset * factor});
  return Polyhedron::from_hrep(h);
}

Mat random_unimodular(std::uint64_t seed, std::size_t n, std::size_t steps) {
  Mat m = identity(n);
  if (n < 2) return m;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng() % n;
    std::size_t j = rng() % (n - 1);
    if (j >= i) ++j;
    long c = static_cast<long>(rng() % 5) - 2;
    if (c == 0) c = 1;
    for (std::size_t col = 0; col < n; ++col) m[i][col] += Rational(c) * m[j][col];
  }
  return m;
}

bool relative_interior_contains(const Polyhedron& p, const Vec& x) {
  if (x.size() != p.dimension()) throw DimensionMismatch("relative_interior_contains: dimension mismatch");
  if (p.is_empty()) throw EmptyInput("relative_interior_contains: empty polyhedron");
  const auto eq = p.implicit_equalities();
  std::vector<bool> is_eq(p.hrep().rows.size(), false);
  for (auto j : eq) is_eq[j] = true;
  for (std::size_t j = 0; j < p.hrep().rows.size(); ++j) {
    const auto& r = p.hrep().rows[j];
    const Rational s = dot(r.normal, x);
    if (is_eq[j] ? s != r.offset : s >= r.offset) return false;
  }
  return true;
}

}  // namespace convval
