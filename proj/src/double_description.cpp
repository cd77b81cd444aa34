#include "double_description.hpp"

#include <boost/dynamic_bitset.hpp>

#include "convval/errors.hpp"

namespace convval::detail {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Ray {
  IVec z;
  Bits tight;
};

bool is_zero_row(const IVec& r) {
  for (const auto& x : r) {
    if (x != 0) return false;
  }
  return true;
}

// Picks `dim` linearly independent rows greedily in input order.
std::vector<std::size_t> independent_rows(const std::vector<IVec>& rows, std::size_t dim) {
  std::vector<std::size_t> chosen;
  Mat echelon;  // rows kept reduced against each other
  std::vector<std::size_t> pivot_cols;
  for (std::size_t k = 0; k < rows.size() && chosen.size() < dim; ++k) {
    Vec v = to_rational(rows[k]);
    for (std::size_t i = 0; i < echelon.size(); ++i) {
      const Rational f = v[pivot_cols[i]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < dim; ++c) v[c] -= f * echelon[i][c];
    }
    std::size_t pc = dim;
    for (std::size_t c = 0; c < dim; ++c) {
      if (v[c] != 0) {
        pc = c;
        break;
      }
    }
    if (pc == dim) continue;
    const Rational inv = 1 / v[pc];
    for (auto& x : v) x *= inv;
    for (std::size_t i = 0; i < echelon.size(); ++i) {
      const Rational f = echelon[i][pc];
      if (f == 0) continue;
      for (std::size_t c = 0; c < dim; ++c) echelon[i][c] -= f * v[c];
    }
    echelon.push_back(std::move(v));
    pivot_cols.push_back(pc);
    chosen.push_back(k);
  }
  return chosen;
}

}  // namespace

ConeGenerators cone_generators(const std::vector<IVec>& input, std::size_t dim) {
  ConeGenerators out;
  if (dim == 0) return out;

  std::vector<IVec> rows;
  rows.reserve(input.size());
  for (const auto& r : input) {
    if (r.size() != dim) throw DimensionMismatch("cone_generators: row size mismatch");
    if (!is_zero_row(r)) rows.push_back(primitive(r));
  }

  Mat a;
  a.reserve(rows.size());
  for (const auto& r : rows) a.push_back(to_rational(r));
  const Mat lineality = nullspace(a, dim);
  for (const auto& l : lineality) {
    out.lines.push_back(primitive(l));
    std::size_t pivot = 0;
    while (l[pivot] == 0) ++pivot;
    IVec e(dim, Integer(0));
    e[pivot] = 1;
    rows.push_back(e);
    e[pivot] = -1;
    rows.push_back(e);
  }

  const std::size_t m = rows.size();
  const auto basis = independent_rows(rows, dim);
  if (basis.size() < dim) {
    throw std::logic_error("cone_generators: pointed part is rank deficient");
  }

  Mat b;
  for (auto k : basis) b.push_back(to_rational(rows[k]));
  const auto binv = inverse(b);
  if (!binv) throw std::logic_error("cone_generators: singular initial basis");

  std::vector<Ray> current;
  for (std::size_t j = 0; j < dim; ++j) {
    Vec col(dim);
    for (std::size_t i = 0; i < dim; ++i) col[i] = -(*binv)[i][j];
    Ray r{primitive(col), Bits(m)};
    for (std::size_t i = 0; i < dim; ++i) {
      if (i != j) r.tight.set(basis[i]);
    }
    current.push_back(std::move(r));
  }

  std::vector<bool> used(m, false);
  for (auto k : basis) used[k] = true;

  for (std::size_t k = 0; k < m; ++k) {
    if (used[k]) continue;
    used[k] = true;
    const IVec& row = rows[k];

    std::vector<Integer> s(current.size());
    std::vector<std::size_t> plus, minus;
    for (std::size_t i = 0; i < current.size(); ++i) {
      s[i] = dot(row, current[i].z);
      if (s[i] > 0) plus.push_back(i);
      else if (s[i] < 0) minus.push_back(i);
      else current[i].tight.set(k);
    }
    if (plus.empty()) continue;

    std::vector<Ray> next;
    next.reserve(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (s[i] <= 0) next.push_back(current[i]);
    }
    for (auto p : plus) {
      for (auto q : minus) {
        Bits common = current[p].tight & current[q].tight;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < current.size(); ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(current[r].tight)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        IVec z(dim);
        for (std::size_t c = 0; c < dim; ++c) {
          z[c] = s[p] * current[q].z[c] - s[q] * current[p].z[c];
        }
        common.set(k);
        next.push_back(Ray{primitive(z), std::move(common)});
      }
    }
    current = std::move(next);
  }

  out.rays.reserve(current.size());
  for (auto& r : current) out.rays.push_back(std::move(r.z));
  return out;
}

}  // namespace convval::detail
