#include "exact_elimination.hpp"

#include <utility>

namespace fintriple::detail {

EchelonResult fraction_free_echelon(std::vector<BigInt> m, std::size_t rows, std::size_t cols) {
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return m[r * cols + c]; };

  EchelonResult result;
  BigInt previous_pivot = 1;
  int sign = 1;
  std::size_t pivot_row = 0;

  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t found = pivot_row;
    while (found < rows && at(found, col) == 0) ++found;
    if (found == rows) continue;

    if (found != pivot_row) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(at(found, c), at(pivot_row, c));
      sign = -sign;
    }

    const BigInt pivot = at(pivot_row, col);
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      const BigInt factor = at(r, col);
      for (std::size_t c = col + 1; c < cols; ++c) {
        // Exact: every intermediate is a minor of the input.
        at(r, c) = (pivot * at(r, c) - factor * at(pivot_row, c)) / previous_pivot;
      }
      at(r, col) = 0;
    }
    previous_pivot = pivot;
    ++pivot_row;
  }

  result.rank = pivot_row;
  if (rows == cols && result.rank == rows) {
    result.determinant = rows == 0 ? BigInt(1) : BigInt(sign * previous_pivot);
  }
  return result;
}

}  // namespace fintriple::detail
