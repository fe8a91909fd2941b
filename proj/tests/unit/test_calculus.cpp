#include "fintriple/calculus.hpp"
#include "fintriple/error.hpp"
#include "fintriple/lattice.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace fintriple;

namespace {

AlgebraElement sampled(Shape shape, std::size_t n, Complex (*f)(double)) {
  std::vector<Complex> s(n);
  for (std::size_t l = 0; l < n; ++l) s[l] = f(lattice_coordinate(shape, n, l));
  return AlgebraElement(std::move(s));
}

// Interior block with prescribed derivatives, built straight from the
// displayed form i c [[0, a-, 0], [a-, 0, a+], [0, a+, 0]].
CommutatorBlockSet synthetic_block(Complex backward, Complex forward, double c) {
  CommutatorBlockSet b;
  b.position = BlockPosition::Interior;
  b.backward = backward;
  b.forward = forward;
  b.scale = c;
  b.nu = c * std::sqrt(std::norm(backward) + std::norm(forward));
  b.block = ComplexMatrix::Zero(3, 3);
  b.block(0, 1) = b.block(1, 0) = kI * c * backward;
  b.block(1, 2) = b.block(2, 1) = kI * c * forward;
  return b;
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

TEST_CASE("commutator with a constant vanishes") {
  const Triple t = make_default_triple(Shape::Circle, 7);
  CHECK(max_abs(commutator(t.dirac, AlgebraElement::constant(7, Complex(2.5, -1.0)))) == 0.0);
}

TEST_CASE("commutator matches dense D pi(a) - pi(a) D") {
  for (Shape shape : {Shape::Circle, Shape::Segment}) {
    const Triple t = make_default_triple(shape, 11);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const AlgebraElement a(oracle::random_samples(11, seed));
      const ComplexMatrix expected =
          oracle::dense_commutator(ComplexMatrix(t.dirac.matrix()), represent_diagonal(a, *t.basis));
      CHECK(max_abs(ComplexMatrix(ComplexMatrix(commutator(t.dirac, a)) - expected)) < 1e-13);
    }
  }
}

TEST_CASE("commutator of a delta function touches columns 0, 1 and n-1 only") {
  const Triple t = make_default_triple(Shape::Circle, 5);
  std::vector<Complex> delta(5, 0.0);
  delta[0] = 1.0;
  const SparseOperator c = commutator(t.dirac, AlgebraElement(delta));
  const ComplexMatrix expected =
      oracle::dense_commutator(ComplexMatrix(t.dirac.matrix()), represent_diagonal(AlgebraElement(delta), *t.basis));
  std::set<std::size_t> columns;
  for (Eigen::Index r = 0; r < expected.rows(); ++r) {
    for (Eigen::Index s = 0; s < expected.cols(); ++s) {
      if (expected(r, s) != Complex(0.0)) columns.insert(t.basis->col_point(static_cast<std::size_t>(s)));
    }
  }
  CHECK(columns == std::set<std::size_t>{0, 1, 4});
  CHECK(max_abs(ComplexMatrix(ComplexMatrix(c) - expected)) == 0.0);
}

TEST_CASE("commutator is block diagonal over columns") {
  for (std::size_t n : {3u, 5u, 10u, 17u}) {
    const Triple t = make_default_triple(Shape::Circle, n);
    const AlgebraElement a(oracle::random_samples(n, n));
    CHECK(off_block_residual(commutator(t.dirac, a), *t.basis) < 1e-12);
  }
  const Triple t = make_default_triple(Shape::Circle, 6);
  CHECK(off_block_residual(t.dirac.matrix(), *t.basis) > 0.0);
  CHECK(code_of([&] { blocks(t.dirac.matrix(), t.dirac); }) == ErrorCode::NotBlockDiagonal);
}

TEST_CASE("blocks carry the displayed form with difference quotients") {
  for (Normalization norm : {Normalization::Sqrt2Corrected, Normalization::Unit}) {
    const std::size_t n = 10;
    const Triple t = make_default_triple(Shape::Circle, n, norm);
    const double dx = lattice_spacing(Shape::Circle, n);
    const double c = coupling_scale(norm);
    for (std::uint64_t seed : {3u, 4u}) {
      // Complex samples follow the same pattern.
      const AlgebraElement a(seed == 3 ? oracle::random_real_samples(n, seed) : oracle::random_samples(n, seed));
      const auto set = blocks(commutator(t.dirac, a), t.dirac);
      REQUIRE(set.size() == n);
      for (const CommutatorBlockSet& b : set) {
        const std::size_t l = b.point;
        const Complex back = (a[l] - a[(l + n - 1) % n]) / dx;
        const Complex fwd = (a[(l + 1) % n] - a[l]) / dx;
        CHECK(std::abs(b.backward - back) < 1e-12);
        CHECK(std::abs(b.forward - fwd) < 1e-12);
        const CommutatorBlockSet expected = synthetic_block(back, fwd, c);
        CHECK(max_abs(ComplexMatrix(b.block - expected.block)) < 1e-12);
        CHECK(b.nu == doctest::Approx(c * std::sqrt(std::norm(back) + std::norm(fwd))).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("blocks for sin on a 16-circle at l = 0") {
  const std::size_t n = 16;
  const Triple t = make_default_triple(Shape::Circle, n);
  const AlgebraElement a = sampled(Shape::Circle, n, [](double x) { return Complex(std::sin(x)); });
  const auto set = blocks(commutator(t.dirac, a), t.dirac);
  // (sin 0 - sin(-dx)) / dx = (sin dx - sin 0) / dx with dx = pi / 8.
  CHECK(set[0].backward.real() == doctest::Approx(0.9744953584044327).epsilon(1e-14));
  CHECK(set[0].forward.real() == doctest::Approx(0.9744953584044327).epsilon(1e-14));
  CHECK(std::abs(set[0].backward.imag()) < 1e-15);
}

TEST_CASE("linear samples on the segment give identical interior blocks") {
  const std::size_t n = 9;
  const Triple t = make_default_triple(Shape::Segment, n);
  const AlgebraElement a = sampled(Shape::Segment, n, [](double x) { return Complex(x); });
  const auto set = blocks(commutator(t.dirac, a), t.dirac);
  CHECK(set.front().position == BlockPosition::LeftBoundary);
  CHECK(set.back().position == BlockPosition::RightBoundary);
  CHECK(set.front().block.rows() == 2);
  CHECK(set.front().backward == Complex(0.0));
  CHECK(set.back().forward == Complex(0.0));
  for (std::size_t l = 1; l + 1 < n; ++l) {
    CHECK(std::abs(set[l].backward - 1.0) < 1e-12);
    CHECK(std::abs(set[l].forward - 1.0) < 1e-12);
    CHECK(max_abs(ComplexMatrix(set[l].block - set[1].block)) < 1e-12);
  }
}

TEST_CASE("constant samples give zero blocks with full kernels") {
  const Triple t = make_default_triple(Shape::Circle, 6);
  for (const CommutatorBlockSet& b : blocks(commutator(t.dirac, AlgebraElement::constant(6)), t.dirac)) {
    CHECK(max_abs(b.block) == 0.0);
    CHECK(b.nu == 0.0);
    CHECK(b.kernel.kind == BlockKernel::Kind::Full);
    CHECK_FALSE(b.rotated.has_value());
  }
}

TEST_CASE("block_kernel closed form") {
  const BlockKernel equal = block_kernel(synthetic_block(1.0, 1.0, 1.0));
  REQUIRE(equal.kind == BlockKernel::Kind::Vector);
  ComplexVector expected(3);
  expected << 1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0);
  CHECK(max_abs(ComplexMatrix(equal.vector - expected)) < 1e-15);

  const BlockKernel backward_only = block_kernel(synthetic_block(1.0, 0.0, 1.0));
  expected << 0.0, 0.0, 1.0;
  CHECK(max_abs(ComplexMatrix(backward_only.vector - expected)) == 0.0);

  CHECK(block_kernel(synthetic_block(0.0, 0.0, 1.0)).kind == BlockKernel::Kind::Full);
}

TEST_CASE("block_kernel annihilates random blocks and spans the SVD null space") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto z = oracle::random_samples(2, seed);
    const bool real = seed % 2 == 0;
    const Complex back = real ? Complex(z[0].real()) : z[0];
    const Complex fwd = real ? Complex(z[1].real()) : z[1];
    const CommutatorBlockSet b = synthetic_block(back, fwd, 1.0 / std::sqrt(2.0));
    const BlockKernel k = block_kernel(b);
    REQUIRE(k.kind == BlockKernel::Kind::Vector);
    CHECK((b.block * k.vector).norm() < 1e-12);
    CHECK(k.vector.norm() == doctest::Approx(1.0));

    const ComplexMatrix null = oracle::numeric_kernel(b.block, 1e-10);
    REQUIRE(null.cols() == 1);
    CHECK(std::abs(std::abs(null.col(0).dot(k.vector)) - 1.0) < 1e-12);

    const Eigen::VectorXd sv = oracle::singular_values(b.block);
    CHECK(sv[0] == doctest::Approx(b.nu).epsilon(1e-12));
    CHECK(sv[1] == doctest::Approx(b.nu).epsilon(1e-12));
    CHECK(sv[2] < 1e-12);
  }
}

TEST_CASE("rotate_block exhibits i sqrt(a-^2 + a+^2)") {
  struct Case {
    double back, fwd, c, nu;
  };
  for (const Case& tc : {Case{1, 1, 1, std::sqrt(2.0)}, Case{3, 4, 1, 5.0}, Case{1, 1, 1 / std::sqrt(2.0), 1.0},
                         Case{-2, 0.5, 1, std::sqrt(4.25)}}) {
    const RotatedBlock r = rotate_block(synthetic_block(tc.back, tc.fwd, tc.c));
    Eigen::Matrix2cd expected;
    expected << 0, kI * tc.nu, kI * tc.nu, 0;
    CHECK(max_abs(ComplexMatrix(r.effective - expected)) < 1e-12);
    CHECK(r.kernel_residual < 1e-12);
  }
  CHECK(code_of([] { rotate_block(synthetic_block(0.0, 0.0, 1.0)); }) == ErrorCode::DegenerateBlock);

  CommutatorBlockSet edge = synthetic_block(1.0, 1.0, 1.0);
  edge.position = BlockPosition::LeftBoundary;
  CHECK(code_of([&] { rotate_block(edge); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("generic commutator kernel: one vector per point, positive chirality") {
  const std::size_t n = 10;
  const Triple t = make_default_triple(Shape::Circle, n);
  const AlgebraElement a(oracle::random_real_samples(n, 42));
  const ComplexMatrix c(commutator(t.dirac, a));
  const ComplexMatrix null = oracle::numeric_kernel(c, 1e-10);
  CHECK(null.cols() == static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < null.cols(); ++k) {
    const ComplexVector v = null.col(k);
    CHECK((t.grading.apply(v) - v).norm() < 1e-10);
  }
}

TEST_CASE("first-order condition as a calculus identity") {
  const std::size_t n = 12;
  const Triple t = make_default_triple(Shape::Segment, n);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const AlgebraElement a(oracle::random_samples(n, seed));
    const AlgebraElement b(oracle::random_samples(n, seed + 9));
    const ComplexMatrix da(commutator(t.dirac, a));
    const ComplexMatrix opp(represent_opposite(b, *t.basis));
    CHECK(max_abs(ComplexMatrix(da * opp - opp * da)) < 1e-12);
  }
}

TEST_CASE("global limit frame") {
  const TripleBasis basis = build_basis(build_q(Shape::Circle, 3));
  const LimitFrame f = global_limit_frame(basis);
  ComplexVector e0 = ComplexVector::Zero(9);
  for (std::size_t l = 0; l < 3; ++l) e0[static_cast<Eigen::Index>(basis.index(l, l))] = 1.0 / std::sqrt(3.0);
  CHECK(max_abs(ComplexMatrix(f.zero - e0)) < 1e-15);
  CHECK(std::abs(f.minus.dot(f.plus)) == 0.0);
  CHECK(f.minus.norm() == doctest::Approx(1.0));
  CHECK(f.plus.norm() == doctest::Approx(1.0));

  const Grading g = grading(basis);
  CHECK((g.apply(f.minus) - f.minus).norm() == 0.0);
  CHECK((g.apply(f.plus) - f.plus).norm() == 0.0);
  CHECK((g.apply(f.zero) + f.zero).norm() == 0.0);

  CHECK(code_of([] { global_limit_frame(build_basis(build_q(Shape::Segment, 4))); }) == ErrorCode::ShapeUnsupported);
}

TEST_CASE("limit frame compression of a linear block") {
  const CommutatorBlockSet b = synthetic_block(1.0, 1.0, 1.0 / std::sqrt(2.0));
  const Eigen::Matrix2cd p = project_to_limit_frame(b);
  CHECK(std::abs(p(0, 1) - kI) < 1e-15);
  CHECK(std::abs(p(1, 0) - kI) < 1e-15);
  CHECK(std::abs(p(0, 0)) == 0.0);
  // Equal derivatives: the limit frame is the rotation frame.
  CHECK(max_abs(ComplexMatrix(p - rotate_block(b).effective)) < 1e-15);
}
