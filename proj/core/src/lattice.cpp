#include "fintriple/lattice.hpp"

#include "fintriple/error.hpp"

#include <numbers>
#include <string>

namespace fintriple {

double lattice_spacing(Shape shape, std::size_t n) {
  if (n < min_size(shape)) throw Error(ErrorCode::SizeTooSmall, "lattice too small");
  return shape == Shape::Circle ? 2.0 * std::numbers::pi / static_cast<double>(n)
                                : 1.0 / static_cast<double>(n - 1);
}

double lattice_coordinate(Shape shape, std::size_t n, std::size_t l) {
  return static_cast<double>(l) * lattice_spacing(shape, n);
}

bool has_previous(Shape shape, std::size_t l) noexcept { return shape == Shape::Circle || l > 0; }

bool has_next(Shape shape, std::size_t n, std::size_t l) noexcept {
  return shape == Shape::Circle || l + 1 < n;
}

std::size_t previous_point(Shape shape, std::size_t n, std::size_t l) {
  if (!has_previous(shape, l)) throw Error(ErrorCode::InvalidArgument, "point 0 has no predecessor");
  return l == 0 ? n - 1 : l - 1;
}

std::size_t next_point(Shape shape, std::size_t n, std::size_t l) {
  if (!has_next(shape, n, l)) {
    throw Error(ErrorCode::InvalidArgument, "point " + std::to_string(l) + " has no successor");
  }
  return l + 1 == n ? 0 : l + 1;
}

}  // namespace fintriple
