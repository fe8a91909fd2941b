#include "fintriple/qmatrix.hpp"

#include "exact_elimination.hpp"
#include "fintriple/error.hpp"

#include <string>

namespace fintriple {

std::string_view to_string(Shape shape) noexcept {
  return shape == Shape::Circle ? "circle" : "segment";
}

std::optional<Shape> parse_shape(std::string_view text) noexcept {
  if (text == "circle") return Shape::Circle;
  if (text == "segment") return Shape::Segment;
  return std::nullopt;
}

int corner_value(Shape shape) noexcept { return shape == Shape::Circle ? 1 : 0; }

std::size_t min_size(Shape shape) noexcept { return shape == Shape::Circle ? 3 : 2; }

IntersectionMatrix build_q(Shape shape, std::size_t n) {
  if (n < min_size(shape)) {
    throw Error(ErrorCode::SizeTooSmall, std::string(to_string(shape)) + " needs n >= " +
                                             std::to_string(min_size(shape)) + ", got " +
                                             std::to_string(n));
  }
  std::vector<int> e(n * n, 0);
  auto at = [&](std::size_t i, std::size_t j) -> int& { return e[i * n + j]; };

  const int b = corner_value(shape);
  at(0, n - 1) = b;
  at(n - 1, 0) = b;
  // Neighbour rule is applied last so it wins over the corner where they meet.
  for (std::size_t i = 0; i < n; ++i) {
    at(i, i) = -1;
    if (i + 1 < n) {
      at(i, i + 1) = 1;
      at(i + 1, i) = 1;
    }
  }
  return IntersectionMatrix(shape, n, std::move(e));
}

namespace {

std::vector<BigInt> to_big(const IntersectionMatrix& q) {
  const auto& src = q.entries();
  return {src.begin(), src.end()};
}

}  // namespace

BigInt determinant(const IntersectionMatrix& q) {
  const std::size_t n = q.size();
  return detail::fraction_free_echelon(to_big(q), n, n).determinant;
}

std::vector<BigInt> det_sequence(Shape shape, std::size_t n_max) {
  if (n_max < min_size(shape)) {
    throw Error(ErrorCode::SizeTooSmall,
                "det_sequence needs n_max >= " + std::to_string(min_size(shape)));
  }
  std::vector<BigInt> out;
  out.reserve(n_max - min_size(shape) + 1);
  for (std::size_t n = min_size(shape); n <= n_max; ++n) out.push_back(determinant(build_q(shape, n)));
  return out;
}

std::size_t kernel_dimension(const IntersectionMatrix& q) {
  const std::size_t n = q.size();
  return n - detail::fraction_free_echelon(to_big(q), n, n).rank;
}

bool is_degenerate(Shape shape, std::size_t n) { return determinant(build_q(shape, n)) == 0; }

std::vector<std::size_t> select_nondegenerate(Shape shape, std::size_t n_min, std::size_t n_max) {
  if (n_min > n_max) {
    throw Error(ErrorCode::InvalidArgument, "n_min must not exceed n_max");
  }
  std::vector<std::size_t> out;
  for (std::size_t n = std::max(n_min, min_size(shape)); n <= n_max; ++n) {
    if (!is_degenerate(shape, n)) out.push_back(n);
  }
  if (out.empty()) {
    throw Error(ErrorCode::EmptySelection, "no non-degenerate " + std::string(to_string(shape)) +
                                               " size in [" + std::to_string(n_min) + ", " +
                                               std::to_string(n_max) + "]");
  }
  return out;
}

}  // namespace fintriple
