#include "convval/convex_function.hpp"

#include <algorithm>

#include "convval/errors.hpp"

namespace convval {

namespace {

Vec lift(const Vec& x, const Rational& y) {
  Vec z = x;
  z.push_back(y);
  return z;
}

Vec drop_last(const Vec& z) { return Vec(z.begin(), z.end() - 1); }

void check_dim(const Vec& x, std::size_t n, const char* what) {
  if (x.size() != n) throw DimensionMismatch(what);
}

// Some point of `s` strictly on the positive side of <h, .> = c.
Vec strict_point(const Polyhedron& s, const Vec& h, const Rational& c) {
  for (const auto& v : s.vrep().vertices) {
    if (dot(h, v) > c) return v;
  }
  for (const auto& r : s.vrep().rays) {
    if (dot(h, r) > 0) {
      const Vec& v = s.vrep().vertices.front();
      Rational m = 1;
      while (dot(h, add(v, scale(r, m))) <= c) m *= 2;
      return add(v, scale(r, m));
    }
  }
  throw std::logic_error("strict_point: no strict point");
}

// Some point of `s` outside `e`.
Vec outside_point(const Polyhedron& s, const Polyhedron& e) {
  for (const auto& v : s.vrep().vertices) {
    if (!e.contains(v)) return v;
  }
  const Vec& base = s.vrep().vertices.front();
  for (const auto& r : s.vrep().rays) {
    const bool escapes = std::any_of(e.hrep().rows.begin(), e.hrep().rows.end(),
                                     [&](const Halfspace& h) { return dot(h.normal, r) > 0; });
    if (!escapes) continue;
    Rational m = 1;
    while (e.contains(add(base, scale(r, m)))) m *= 2;
    return add(base, scale(r, m));
  }
  throw std::logic_error("outside_point: set is contained");
}

}  // namespace

std::string to_string(const Extended& v) { return v.finite ? to_string(v.value) : "inf"; }

ClosedPwa ClosedPwa::make(const std::vector<AffinePiece>& pieces, const HRep& domain) {
  if (pieces.empty()) throw InvalidArgument("make: at least one affine piece is required");
  const std::size_t n = domain.dim;
  if (n == 0) throw InvalidArgument("make: dimension must be positive");
  if (domain.empty) throw EmptyDomain("make: empty domain");
  HRep h{n + 1, {}, false};
  for (const auto& p : pieces) {
    check_dim(p.slope, n, "make: piece dimension mismatch");
    h.rows.push_back(Halfspace{lift(p.slope, Rational(-1)), -p.intercept});
  }
  for (const auto& r : domain.rows) {
    check_dim(r.normal, n, "make: domain dimension mismatch");
    h.rows.push_back(Halfspace{lift(r.normal, Rational(0)), r.offset});
  }
  return from_epigraph(Polyhedron::from_hrep(h));
}

ClosedPwa ClosedPwa::from_epigraph(Polyhedron epi) {
  if (epi.is_empty()) throw EmptyDomain("from_epigraph: empty domain");
  if (epi.dimension() < 2) throw InvalidArgument("from_epigraph: dimension must be positive");
  ClosedPwa f;
  f.n_ = epi.dimension() - 1;
  HRep dom{f.n_, {}, false};
  for (const auto& r : epi.hrep().rows) {
    const Rational& c = r.normal.back();
    if (c > 0) throw InvalidArgument("from_epigraph: set is not upward closed");
    if (c == 0) {
      dom.rows.push_back(Halfspace{drop_last(r.normal), r.offset});
    } else {
      f.pieces_.push_back(AffinePiece{scale(drop_last(r.normal), -1 / c), r.offset / c});
    }
  }
  if (f.pieces_.empty()) throw InvalidArgument("from_epigraph: function is not bounded below");
  f.domain_ = Polyhedron::from_hrep(dom);
  f.epi_ = std::move(epi);
  return f;
}

Extended ClosedPwa::eval(const Vec& x) const {
  check_dim(x, n_, "eval: point dimension mismatch");
  if (!domain_.contains(x)) return Extended::infinity();
  Rational best = pieces_.front()(x);
  for (std::size_t i = 1; i < pieces_.size(); ++i) best = std::max(best, pieces_[i](x));
  return Extended::of(best);
}

bool ClosedPwa::is_coercive() const {
  if (!epi_.vrep().lines.empty()) return false;
  return std::all_of(epi_.vrep().rays.begin(), epi_.vrep().rays.end(),
                     [](const Vec& r) { return r.back() > 0; });
}

PwaConvex PwaConvex::from_closed(const ClosedPwa& f) {
  if (!f.is_coercive()) throw NotCoercive("function has an unbounded sublevel set");
  return PwaConvex(f);
}

PwaConvex PwaConvex::make(const std::vector<AffinePiece>& pieces, const HRep& domain) {
  return from_closed(ClosedPwa::make(pieces, domain));
}

PwaConvex PwaConvex::from_epigraph(Polyhedron epi) {
  return from_closed(ClosedPwa::from_epigraph(std::move(epi)));
}

MinValue min_value(const PwaConvex& u) {
  const auto& verts = u.epigraph().vrep().vertices;
  Rational t = verts.front().back();
  for (const auto& v : verts) t = std::min(t, v.back());
  return MinValue{t, sublevel(u, t)};
}

Polyhedron sublevel(const ClosedPwa& u, const Rational& t) {
  HRep h{u.dimension(), {}, false};
  for (const auto& p : u.pieces()) h.rows.push_back(Halfspace{p.slope, t - p.intercept});
  const auto& dom = u.domain().hrep().rows;
  h.rows.insert(h.rows.end(), dom.begin(), dom.end());
  return Polyhedron::from_hrep(h);
}

PwaConvex sup(const PwaConvex& u, const PwaConvex& v) {
  if (u.dimension() != v.dimension()) throw DimensionMismatch("sup: dimension mismatch");
  Polyhedron epi = intersect(u.epigraph(), v.epigraph());
  if (epi.is_empty()) throw EmptyDomain("sup: domains are disjoint");
  return PwaConvex::from_epigraph(std::move(epi));
}

bool pointwise_leq(const ClosedPwa& u, const ClosedPwa& v) {
  if (u.dimension() != v.dimension()) throw DimensionMismatch("pointwise_leq: dimension mismatch");
  return u.epigraph().contains(v.epigraph());
}

PwaConvex inf_if_convex(const PwaConvex& u, const PwaConvex& v) {
  if (u.dimension() != v.dimension()) throw DimensionMismatch("inf_if_convex: dimension mismatch");
  const Polyhedron& eu = u.epigraph();
  const Polyhedron& ev = v.epigraph();
  VRep hull = eu.vrep();
  hull.vertices.insert(hull.vertices.end(), ev.vrep().vertices.begin(), ev.vrep().vertices.end());
  hull.rays.insert(hull.rays.end(), ev.vrep().rays.begin(), ev.vrep().rays.end());
  const Polyhedron ew = Polyhedron::from_vrep(hull);

  // ew \ eu is the union over rows of eu of the open halves beyond them; each
  // such part must sit inside ev, and ev is closed.
  for (const auto& row : eu.hrep().rows) {
    HRep beyond = ew.hrep();
    beyond.rows.push_back(Halfspace{scale(row.normal, Rational(-1)), -row.offset});
    const Polyhedron s = Polyhedron::from_hrep(beyond);
    if (s.is_empty()) continue;
    const bool has_strict = std::any_of(s.vrep().vertices.begin(), s.vrep().vertices.end(),
                                        [&](const Vec& z) { return dot(row.normal, z) > row.offset; }) ||
                            std::any_of(s.vrep().rays.begin(), s.vrep().rays.end(),
                                        [&](const Vec& r) { return dot(row.normal, r) > 0; });
    if (!has_strict || ev.contains(s)) continue;

    const Vec p = outside_point(s, ev);
    const Vec z = strict_point(s, row.normal, row.offset);
    Rational eps = 1;
    Vec w = add(p, scale(sub(z, p), eps));
    while (ev.contains(w) || dot(row.normal, w) <= row.offset) {
      eps /= 2;
      w = add(p, scale(sub(z, p), eps));
    }
    throw NotConvexMin("inf_if_convex: pointwise minimum is not convex", drop_last(w));
  }
  return PwaConvex::from_epigraph(ew);
}

PwaConvex add_constant(const PwaConvex& u, const Rational& s) {
  return PwaConvex::from_epigraph(translate(u.epigraph(), lift(zeros(u.dimension()), s)));
}

PwaConvex cone_function(const Polyhedron& k, const Rational& t) {
  if (k.is_empty()) throw EmptyInput("cone_function: empty set");
  if (!k.is_bounded()) throw UnboundedInput("cone_function: unbounded set");
  const std::size_t n = k.dimension();
  if (!k.contains(zeros(n))) throw InvalidArgument("cone_function: origin not in K");
  VRep v{n + 1, {lift(zeros(n), t)}, {lift(zeros(n), Rational(1))}, {}, false};
  for (const auto& x : k.vrep().vertices) v.rays.push_back(lift(x, Rational(1)));
  return PwaConvex::from_epigraph(Polyhedron::from_vrep(v));
}

PwaConvex indicator_function(const Polyhedron& k, const Rational& t) {
  if (k.is_empty()) throw EmptyInput("indicator_function: empty set");
  if (!k.is_bounded()) throw UnboundedInput("indicator_function: unbounded set");
  const std::size_t n = k.dimension();
  VRep v{n + 1, {}, {lift(zeros(n), Rational(1))}, {}, false};
  for (const auto& x : k.vrep().vertices) v.vertices.push_back(lift(x, t));
  return PwaConvex::from_epigraph(Polyhedron::from_vrep(v));
}

PwaConvex transform(const PwaConvex& u, const Mat& phi, const Vec& tau, const Rational& shift) {
  const std::size_t n = u.dimension();
  if (phi.size() != n || tau.size() != n) throw DimensionMismatch("transform: size mismatch");
  for (const auto& row : phi) check_dim(row, n, "transform: matrix not square");
  if (determinant(phi) != 1) throw NotUnimodular("transform: determinant is not 1");
  const Mat inv_t = transpose(*inverse(phi));
  HRep h{n + 1, {}, false};
  for (const auto& r : u.epigraph().hrep().rows) {
    const Rational& c = r.normal.back();
    const Vec a = mat_vec(inv_t, drop_last(r.normal));
    h.rows.push_back(Halfspace{lift(a, c), r.offset + dot(a, tau) + c * shift});
  }
  return PwaConvex::from_epigraph(Polyhedron::from_hrep(h));
}

std::vector<std::pair<Polyhedron, std::size_t>> affine_cells(const ClosedPwa& u) {
  std::vector<std::pair<Polyhedron, std::size_t>> out;
  const auto& pieces = u.pieces();
  const int dom_dim = u.domain().affine_dimension();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    HRep h = u.domain().hrep();
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (j == i) continue;
      h.rows.push_back(Halfspace{sub(pieces[j].slope, pieces[i].slope),
                                 pieces[i].intercept - pieces[j].intercept});
    }
    Polyhedron cell = Polyhedron::from_hrep(h);
    if (cell.affine_dimension() == dom_dim) out.emplace_back(std::move(cell), i);
  }
  return out;
}

CellComplex common_refinement(const ClosedPwa& u, const ClosedPwa& v) {
  if (u.dimension() != v.dimension()) throw DimensionMismatch("common_refinement: dimension mismatch");
  const int dim = intersect(u.domain(), v.domain()).affine_dimension();
  CellComplex out;
  if (dim < 0) return out;
  const auto cu = affine_cells(u);
  const auto cv = affine_cells(v);
  for (const auto& [ru, iu] : cu) {
    for (const auto& [rv, iv] : cv) {
      Polyhedron cell = intersect(ru, rv);
      if (cell.affine_dimension() == dim) out.cells.push_back(Cell{std::move(cell), iu, iv});
    }
  }
  return out;
}

LevelDistance level_hausdorff_distance(const PwaConvex& u, const PwaConvex& v,
                                       const std::vector<Rational>& levels) {
  if (u.dimension() != v.dimension()) throw DimensionMismatch("level_hausdorff_distance: dimension mismatch");
  LevelDistance out;
  for (const auto& t : levels) {
    const Polyhedron a = sublevel(u, t);
    const Polyhedron b = sublevel(v, t);
    if (a.is_empty() || b.is_empty()) {
      out.skipped.push_back(t);
      continue;
    }
    out.distance = std::max(out.distance, hausdorff_distance(a, b));
  }
  return out;
}

}  // namespace convval
