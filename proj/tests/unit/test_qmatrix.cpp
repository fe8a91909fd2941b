#include "fintriple/error.hpp"
#include "fintriple/qmatrix.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <vector>

using namespace fintriple;

namespace {

std::vector<int> as_ints(const std::vector<BigInt>& v) {
  std::vector<int> out;
  for (const BigInt& x : v) out.push_back(static_cast<int>(x));
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected fintriple::Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("build_q segment and circle patterns") {
  const IntersectionMatrix seg = build_q(Shape::Segment, 3);
  CHECK(seg.entries() == std::vector<int>{-1, 1, 0, 1, -1, 1, 0, 1, -1});

  const IntersectionMatrix c3 = build_q(Shape::Circle, 3);
  CHECK(c3.entries() == std::vector<int>{-1, 1, 1, 1, -1, 1, 1, 1, -1});

  const IntersectionMatrix c5 = build_q(Shape::Circle, 5);
  CHECK(c5(0, 4) == 1);
  CHECK(c5(4, 0) == 1);
  CHECK(c5(0, 2) == 0);
  CHECK(c5(1, 3) == 0);
}

TEST_CASE("build_q invariants hold for every size up to 40") {
  for (Shape shape : {Shape::Circle, Shape::Segment}) {
    for (std::size_t n = min_size(shape); n <= 40; ++n) {
      const IntersectionMatrix q = build_q(shape, n);
      for (std::size_t i = 0; i < n; ++i) {
        int row_sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
          REQUIRE(q(i, j) == q(j, i));
          row_sum += q(i, j);
        }
        CHECK(q(i, i) == -1);
        if (shape == Shape::Circle) CHECK(row_sum == 1);
      }
      if (n > 3) CHECK(q(0, n - 1) == corner_value(shape));
    }
  }
}

TEST_CASE("build_q rejects sizes below the neighbour pattern") {
  CHECK(code_of([] { build_q(Shape::Circle, 2); }) == ErrorCode::SizeTooSmall);
  CHECK(code_of([] { build_q(Shape::Segment, 1); }) == ErrorCode::SizeTooSmall);
  CHECK_NOTHROW(build_q(Shape::Segment, 2));
}

TEST_CASE("det_sequence reproduces the circle and segment sequences") {
  CHECK(as_ints(det_sequence(Shape::Circle, 8)) == std::vector<int>{4, -3, 1, 0, 1, -3});
  CHECK(as_ints(det_sequence(Shape::Segment, 7)) == std::vector<int>{0, 1, -1, 0, 1, -1});
  CHECK(as_ints(det_sequence(Shape::Segment, 2)) == std::vector<int>{0});
  CHECK(code_of([] { det_sequence(Shape::Circle, 2); }) == ErrorCode::SizeTooSmall);
}

TEST_CASE("det_sequence periodicity up to n = 60") {
  const std::vector<int> circle_cycle{4, -3, 1, 0, 1, -3};
  const auto circle = det_sequence(Shape::Circle, 60);
  for (std::size_t k = 0; k < circle.size(); ++k) CHECK(circle[k] == circle_cycle[k % 6]);

  const std::vector<int> segment_cycle{0, 1, -1};
  const auto segment = det_sequence(Shape::Segment, 60);
  for (std::size_t k = 0; k < segment.size(); ++k) CHECK(segment[k] == segment_cycle[k % 3]);

  // Tridiagonal recurrence d_n = -d_{n-1} - d_{n-2}.
  for (std::size_t k = 2; k < segment.size(); ++k) CHECK(segment[k] == -segment[k - 1] - segment[k - 2]);
}

TEST_CASE("Bareiss agrees with rational elimination") {
  for (Shape shape : {Shape::Circle, Shape::Segment}) {
    for (std::size_t n = min_size(shape); n <= 36; ++n) {
      const IntersectionMatrix q = build_q(shape, n);
      const auto ref = oracle::rational_elimination(q);
      CAPTURE(n);
      CHECK(oracle::Rational(determinant(q)) == ref.det);
      CHECK(kernel_dimension(q) == n - ref.rank);
    }
  }
}

TEST_CASE("kernel_dimension of degenerate sizes") {
  CHECK(kernel_dimension(build_q(Shape::Circle, 6)) == 2);
  CHECK(kernel_dimension(build_q(Shape::Segment, 5)) == 1);
  CHECK(kernel_dimension(build_q(Shape::Circle, 5)) == 0);
  for (Shape shape : {Shape::Circle, Shape::Segment}) {
    for (std::size_t n = min_size(shape); n <= 30; ++n) {
      const IntersectionMatrix q = build_q(shape, n);
      CHECK((kernel_dimension(q) == 0) == (determinant(q) != 0));
    }
  }
}

TEST_CASE("select_nondegenerate") {
  CHECK(select_nondegenerate(Shape::Circle, 3, 12) == std::vector<std::size_t>{3, 4, 5, 7, 8, 9, 10, 11});
  CHECK(select_nondegenerate(Shape::Segment, 2, 8) == std::vector<std::size_t>{3, 4, 6, 7});
  CHECK(code_of([] { select_nondegenerate(Shape::Circle, 6, 6); }) == ErrorCode::EmptySelection);
  CHECK(code_of([] { select_nondegenerate(Shape::Circle, 9, 4); }) == ErrorCode::InvalidArgument);
  CHECK(select_nondegenerate(Shape::Circle, 0, 4) == std::vector<std::size_t>{3, 4});
}

TEST_CASE("shape names round trip") {
  CHECK(parse_shape("circle") == Shape::Circle);
  CHECK(parse_shape("segment") == Shape::Segment);
  CHECK_FALSE(parse_shape("torus").has_value());
  CHECK(to_string(Shape::Segment) == "segment");
}
