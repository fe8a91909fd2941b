#include "fintriple/calculus.hpp"

#include "fintriple/error.hpp"
#include "fintriple/lattice.hpp"

#include <cmath>

namespace fintriple {

namespace {

constexpr double kBlockTolerance = 1e-12;

// Position of H_{row,l} inside the column block of l, or -1.
Eigen::Index local_index(const TripleBasis& basis, std::size_t row, std::size_t l) {
  const Subspace* s = basis.find(row, l);
  if (s == nullptr) return -1;
  return static_cast<Eigen::Index>(s->start - basis.column_block(l).begin);
}

ComplexVector normalize_phase(ComplexVector v) {
  v.normalize();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > 0.0) {
      v *= std::conj(v[k]) / std::abs(v[k]);
      v[k] = std::abs(v[k]);
      break;
    }
  }
  return v;
}

}  // namespace

SparseOperator commutator(const DiracOperator& dirac, const AlgebraElement& a) {
  return commutator_with_diagonal(dirac.matrix(), represent_diagonal(a, dirac.basis()));
}

double off_block_residual(const SparseOperator& c, const TripleBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.dimension());
  if (c.rows() != d || c.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "commutator does not match the basis");
  }
  double out = 0.0;
  for (int k = 0; k < c.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(c, k); it; ++it) {
      if (basis.col_point(static_cast<std::size_t>(it.row())) !=
          basis.col_point(static_cast<std::size_t>(it.col()))) {
        out = std::max(out, std::abs(it.value()));
      }
    }
  }
  return out;
}

std::vector<CommutatorBlockSet> blocks(const SparseOperator& c, const DiracOperator& dirac) {
  const TripleBasis& basis = dirac.basis();
  const double residual = off_block_residual(c, basis);
  if (residual > kBlockTolerance) {
    throw Error(ErrorCode::NotBlockDiagonal,
                "off-block residual " + std::to_string(residual) + " exceeds 1e-12");
  }

  const Shape shape = basis.shape();
  const std::size_t n = basis.points();
  const double scale = dirac.scale();
  const Complex unit = kI * scale;

  std::vector<CommutatorBlockSet> out;
  out.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    const IndexRange range = basis.column_block(l);
    const auto begin = static_cast<Eigen::Index>(range.begin);
    const auto size = static_cast<Eigen::Index>(range.size);

    CommutatorBlockSet b;
    b.point = l;
    b.scale = scale;
    b.block = ComplexMatrix(c.block(begin, begin, size, size));
    if (!has_previous(shape, l)) {
      b.position = BlockPosition::LeftBoundary;
    } else if (!has_next(shape, n, l)) {
      b.position = BlockPosition::RightBoundary;
    }

    const Eigen::Index centre = local_index(basis, l, l);
    if (has_previous(shape, l)) {
      const Eigen::Index back = local_index(basis, previous_point(shape, n, l), l);
      b.backward = b.block(back, centre) / unit;
    }
    if (has_next(shape, n, l)) {
      const Eigen::Index fwd = local_index(basis, next_point(shape, n, l), l);
      b.forward = b.block(centre, fwd) / unit;
    }
    b.nu = scale * std::sqrt(std::norm(b.backward) + std::norm(b.forward));
    b.kernel = block_kernel(b);
    if (b.position == BlockPosition::Interior && b.nu > 0.0) b.rotated = rotate_block(b);
    out.push_back(std::move(b));
  }
  return out;
}

BlockKernel block_kernel(const CommutatorBlockSet& b) {
  BlockKernel k;
  if (b.position != BlockPosition::Interior) {
    const Complex d = b.position == BlockPosition::LeftBoundary ? b.forward : b.backward;
    k.kind = d == Complex(0.0) ? BlockKernel::Kind::Full : BlockKernel::Kind::Trivial;
    return k;
  }
  if (b.backward == Complex(0.0) && b.forward == Complex(0.0)) {
    k.kind = BlockKernel::Kind::Full;
    return k;
  }
  ComplexVector omega(3);
  omega << b.forward, 0.0, -b.backward;
  k.kind = BlockKernel::Kind::Vector;
  k.vector = normalize_phase(std::move(omega));
  return k;
}

RotatedBlock rotate_block(const CommutatorBlockSet& b) {
  if (b.position != BlockPosition::Interior) {
    throw Error(ErrorCode::InvalidArgument, "rotate_block needs an interior block");
  }
  const double norm = std::sqrt(std::norm(b.backward) + std::norm(b.forward));
  if (norm == 0.0) {
    throw Error(ErrorCode::DegenerateBlock, "both derivatives vanish at point " + std::to_string(b.point));
  }
  Eigen::Matrix3cd frame = Eigen::Matrix3cd::Zero();
  frame.col(0) << b.backward / norm, 0.0, b.forward / norm;
  frame(1, 1) = 1.0;
  frame.col(2) << std::conj(b.forward) / norm, 0.0, -std::conj(b.backward) / norm;

  RotatedBlock r;
  r.full = frame.adjoint() * Eigen::Matrix3cd(b.block) * frame;
  r.effective = r.full.topLeftCorner<2, 2>();
  r.kernel_residual = std::max(r.full.row(2).cwiseAbs().maxCoeff(), r.full.col(2).cwiseAbs().maxCoeff());
  return r;
}

Eigen::Matrix2cd project_to_limit_frame(const CommutatorBlockSet& b) {
  if (b.position != BlockPosition::Interior) {
    throw Error(ErrorCode::InvalidArgument, "limit frame projection needs an interior block");
  }
  Eigen::Matrix<Complex, 3, 2> frame = Eigen::Matrix<Complex, 3, 2>::Zero();
  frame(0, 0) = frame(2, 0) = 1.0 / std::sqrt(2.0);
  frame(1, 1) = 1.0;
  return frame.adjoint() * Eigen::Matrix3cd(b.block) * frame;
}

LimitFrame global_limit_frame(const TripleBasis& basis) {
  if (basis.shape() != Shape::Circle) {
    throw Error(ErrorCode::ShapeUnsupported, "the global limit frame needs uniform circle blocks");
  }
  const std::size_t n = basis.points();
  const auto d = static_cast<Eigen::Index>(basis.dimension());
  const double weight = 1.0 / std::sqrt(static_cast<double>(n));
  LimitFrame f{ComplexVector::Zero(d), ComplexVector::Zero(d), ComplexVector::Zero(d)};
  for (std::size_t l = 0; l < n; ++l) {
    f.minus[static_cast<Eigen::Index>(basis.index(previous_point(Shape::Circle, n, l), l))] = weight;
    f.zero[static_cast<Eigen::Index>(basis.index(l, l))] = weight;
    f.plus[static_cast<Eigen::Index>(basis.index(next_point(Shape::Circle, n, l), l))] = weight;
  }
  return f;
}

}  // namespace fintriple
