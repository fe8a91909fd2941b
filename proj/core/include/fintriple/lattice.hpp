#pragma once

#include "fintriple/qmatrix.hpp"

#include <cstddef>

namespace fintriple {

/// Circle: circumference 2*pi, x_l = 2*pi*l/n. Segment: [0, 1], x_l = l/(n-1).
double lattice_spacing(Shape shape, std::size_t n);
double lattice_coordinate(Shape shape, std::size_t n, std::size_t l);

/// Neighbour indices; wrap around on the circle. On the segment the caller
/// must not ask for the missing neighbour of an end point.
std::size_t previous_point(Shape shape, std::size_t n, std::size_t l);
std::size_t next_point(Shape shape, std::size_t n, std::size_t l);

bool has_previous(Shape shape, std::size_t l) noexcept;
bool has_next(Shape shape, std::size_t n, std::size_t l) noexcept;

}  // namespace fintriple
