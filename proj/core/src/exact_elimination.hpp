#pragma once

#include "fintriple/qmatrix.hpp"

#include <cstddef>
#include <vector>

namespace fintriple::detail {

struct EchelonResult {
  std::size_t rank = 0;
  BigInt determinant = 0;  // zero unless square and full rank
};

/// Bareiss fraction-free reduction to row echelon form over the integers.
/// Columns without a pivot are skipped, so the rank is exact for any shape.
EchelonResult fraction_free_echelon(std::vector<BigInt> m, std::size_t rows, std::size_t cols);

}  // namespace fintriple::detail
