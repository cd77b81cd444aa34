#pragma once

#include <cstddef>
#include <vector>

#include "convval/rational.hpp"

namespace convval::detail {

/// Generators of the cone {z in R^dim : <row, z> <= 0 for every row}.
/// `lines` is the lineality space in reduced row echelon form (primitive
/// integer rows). `rays` are the extreme rays of the pointed part that lies
/// in the coordinate complement of the lineality pivots, so the output is a
/// canonical function of the cone.
struct ConeGenerators {
  std::vector<IVec> lines;
  std::vector<IVec> rays;
};

ConeGenerators cone_generators(const std::vector<IVec>& rows, std::size_t dim);

}  // namespace convval::detail
