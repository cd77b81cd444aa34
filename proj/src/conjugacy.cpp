#include "convval/conjugacy.hpp"

#include <algorithm>

#include "convval/errors.hpp"

namespace convval {

namespace {

std::vector<Vec> cube_vertices(std::size_t n, const Rational& a) {
  std::vector<Vec> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = (mask >> i) & 1 ? -a : a;
    out.push_back(std::move(y));
  }
  return out;
}

// Minimizer of <a, y> + |x - y|^2 / (2t) over {G y <= h}, if the set is nonempty.
std::optional<Vec> project_cell(const std::vector<Halfspace>& rows, const Vec& a, const Rational& t,
                                const Vec& x, std::uint64_t& used, std::uint64_t budget) {
  const std::size_t n = x.size();
  const Vec free = sub(x, scale(a, t));
  auto feasible = [&](const Vec& y) {
    return std::all_of(rows.begin(), rows.end(),
                       [&](const Halfspace& r) { return dot(r.normal, y) <= r.offset; });
  };
  if (++used > budget) throw BudgetExceeded("moreau_eval: active-set budget exceeded");
  if (feasible(free)) return free;

  const std::size_t m = rows.size();
  for (std::size_t k = 1; k <= std::min(n, m); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (++used > budget) throw BudgetExceeded("moreau_eval: active-set budget exceeded");
      Mat g;
      Vec rhs;
      for (auto i : idx) {
        g.push_back(rows[i].normal);
        rhs.push_back(rows[i].offset);
      }
      if (const auto gram_inv = inverse(mat_mul(g, transpose(g)))) {
        const Vec lambda = scale(mat_vec(*gram_inv, sub(mat_vec(g, free), rhs)), 1 / t);
        if (std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l >= 0; })) {
          Vec y = free;
          for (std::size_t i = 0; i < k; ++i) y = sub(y, scale(g[i], t * lambda[i]));
          if (feasible(y)) return y;
        }
      }
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

ClosedPwa conjugate(const ClosedPwa& u) {
  const std::size_t n = u.dimension();
  const VRep& v = u.epigraph().vrep();
  std::vector<AffinePiece> pieces;
  for (const auto& z : v.vertices) pieces.push_back(AffinePiece{Vec(z.begin(), z.end() - 1), -z.back()});
  HRep dom{n, {}, false};
  for (const auto& z : v.rays) {
    Vec r(z.begin(), z.end() - 1);
    if (is_zero(r)) continue;
    dom.rows.push_back(Halfspace{std::move(r), z.back()});
  }
  for (const auto& z : v.lines) {
    Vec r(z.begin(), z.end() - 1);
    dom.rows.push_back(Halfspace{r, z.back()});
    dom.rows.push_back(Halfspace{scale(r, Rational(-1)), -z.back()});
  }
  return ClosedPwa::make(pieces, dom);
}

bool biconjugate_check(const ClosedPwa& u) { return conjugate(conjugate(u)) == u; }

ClosedPwa inf_convolution(const ClosedPwa& u, const ClosedPwa& v) {
  if (u.dimension() != v.dimension()) throw DimensionMismatch("inf_convolution: dimension mismatch");
  return ClosedPwa::from_epigraph(minkowski_sum(u.epigraph(), v.epigraph()));
}

PwaConvex inf_convolution(const PwaConvex& u, const PwaConvex& v) {
  return PwaConvex::from_closed(inf_convolution(static_cast<const ClosedPwa&>(u), static_cast<const ClosedPwa&>(v)));
}

ClosedPwa epi_scale(const ClosedPwa& u, const Rational& t) {
  if (t <= 0) throw InvalidArgument("epi_scale: factor must be positive");
  return ClosedPwa::from_epigraph(dilate(u.epigraph(), t));
}

PwaConvex epi_scale(const PwaConvex& u, const Rational& t) {
  return PwaConvex::from_closed(epi_scale(static_cast<const ClosedPwa&>(u), t));
}

Rational moreau_eval(const ClosedPwa& u, const Rational& t, const Vec& x, std::uint64_t budget) {
  if (t <= 0) throw InvalidArgument("moreau_eval: t must be positive");
  if (x.size() != u.dimension()) throw DimensionMismatch("moreau_eval: point dimension mismatch");
  std::uint64_t used = 0;
  std::optional<Rational> best;
  for (const auto& [cell, i] : affine_cells(u)) {
    const AffinePiece& p = u.pieces()[i];
    const auto y = project_cell(cell.hrep().rows, p.slope, t, x, used, budget);
    if (!y) continue;
    const Rational value = p(*y) + norm_squared(sub(x, *y)) / (2 * t);
    if (!best || value < *best) best = value;
  }
  if (!best) throw std::logic_error("moreau_eval: no feasible cell");
  return *best;
}

ConeBound cone_bound(const PwaConvex& u) {
  const std::size_t n = u.dimension();
  const ClosedPwa star = conjugate(u);
  std::optional<Rational> c;
  for (const auto& r : star.domain().hrep().rows) {
    if (is_zero(r.normal)) continue;
    const Rational ratio = r.offset / norm1(r.normal);
    if (!c || ratio < *c) c = ratio;
  }
  const Rational a = c.value_or(Rational(1)) / 2;
  std::optional<Rational> m;
  for (const auto& y : cube_vertices(n, a)) {
    const Extended val = star.eval(y);
    if (!val.finite) throw std::logic_error("cone_bound: cube leaves the conjugate domain");
    if (!m || val.value > *m) m = val.value;
  }
  return ConeBound{a, -*m - 1};
}

bool certify_cone_bound(const PwaConvex& u, const ConeBound& c) {
  if (c.a <= 0) return false;
  const Rational a2 = c.a * c.a;
  const VRep& v = u.epigraph().vrep();
  if (!v.lines.empty()) return false;
  for (const auto& z : v.vertices) {
    const Rational gap = z.back() - c.b;
    const Vec x(z.begin(), z.end() - 1);
    if (gap <= 0 || gap * gap <= a2 * norm_squared(x)) return false;
  }
  for (const auto& z : v.rays) {
    const Rational s = z.back();
    const Vec r(z.begin(), z.end() - 1);
    if (s <= 0 || s * s <= a2 * norm_squared(r)) return false;
  }
  return true;
}

ConeBound uniform_cone_bound(const std::vector<PwaConvex>& us) {
  if (us.empty()) throw InvalidArgument("uniform_cone_bound: empty list");
  ConeBound out = cone_bound(us.front());
  for (std::size_t i = 1; i < us.size(); ++i) {
    const ConeBound c = cone_bound(us[i]);
    out.a = std::min(out.a, c.a);
    out.b = std::min(out.b, c.b);
  }
  return out;
}

}  // namespace convval
