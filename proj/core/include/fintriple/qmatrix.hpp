#pragma once

// Intersection matrices of the tripled lattice: -1 on the diagonal, +1 between
// nearest neighbours, and a corner entry b closing the chain (b = 1 circle,
// b = 0 segment).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace fintriple {

using BigInt = boost::multiprecision::cpp_int;

enum class Shape { Circle, Segment };

std::string_view to_string(Shape shape) noexcept;
std::optional<Shape> parse_shape(std::string_view text) noexcept;

/// Corner parameter b of the intersection matrix.
int corner_value(Shape shape) noexcept;

/// Smallest lattice size for which the neighbour pattern is well defined.
std::size_t min_size(Shape shape) noexcept;

class IntersectionMatrix {
 public:
  Shape shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return n_; }

  int operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  /// Row-major n*n entries.
  const std::vector<int>& entries() const noexcept { return entries_; }

  bool operator==(const IntersectionMatrix&) const = default;

 private:
  IntersectionMatrix(Shape shape, std::size_t n, std::vector<int> entries)
      : shape_(shape), n_(n), entries_(std::move(entries)) {}

  friend IntersectionMatrix build_q(Shape shape, std::size_t n);

  Shape shape_;
  std::size_t n_;
  std::vector<int> entries_;
};

/// Throws Error{SizeTooSmall} below min_size(shape). Where a corner coincides
/// with a neighbour slot (circle, n = 3) the entry stays +1.
IntersectionMatrix build_q(Shape shape, std::size_t n);

/// Exact determinant by fraction-free elimination.
BigInt determinant(const IntersectionMatrix& q);

/// det(build_q(shape, n)) for n = min_size(shape) .. n_max; element k holds
/// the value at n = min_size(shape) + k.
std::vector<BigInt> det_sequence(Shape shape, std::size_t n_max);

/// Dimension of the rational null space of q.
std::size_t kernel_dimension(const IntersectionMatrix& q);

/// All n in [n_min, n_max] with det(q) != 0. Sizes below min_size(shape) are
/// skipped. Throws Error{EmptySelection} when nothing survives.
std::vector<std::size_t> select_nondegenerate(Shape shape, std::size_t n_min, std::size_t n_max);

bool is_degenerate(Shape shape, std::size_t n);

}  // namespace fintriple
