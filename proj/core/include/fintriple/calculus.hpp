#pragma once

// The first-order differential [D, pi(a)] and its per-point block structure.

#include "fintriple/dirac.hpp"
#include "fintriple/linalg.hpp"
#include "fintriple/triple.hpp"

#include <optional>
#include <vector>

namespace fintriple {

/// D pi(a) - pi(a) D; entry (ij, kl) is (a_k - a_i) m_{ij,kl}.
SparseOperator commutator(const DiracOperator& dirac, const AlgebraElement& a);

/// Largest entry of `c` coupling two different column blocks.
double off_block_residual(const SparseOperator& c, const TripleBasis& basis);

enum class BlockPosition { Interior, LeftBoundary, RightBoundary };

struct BlockKernel {
  enum class Kind {
    Vector,   // one-dimensional kernel spanned by `vector`
    Full,     // the block vanishes
    Trivial,  // injective (segment end points with nonzero derivative)
  };
  Kind kind = Kind::Trivial;
  ComplexVector vector;
};

struct RotatedBlock {
  Eigen::Matrix2cd effective;
  /// U^dagger B U in the frame {v, e_ll, w}, v = (a'_-, 0, a'_+)/|.|,
  /// w = (conj a'_+, 0, -conj a'_-)/|.|.
  Eigen::Matrix3cd full;
  /// Largest modulus in the w row and column; zero for real samples.
  double kernel_residual = 0.0;
};

/// Column block of [D, pi(a)] at point l on
/// H_{l-1,l} (+) H_{l,l} (+) H_{l+1,l}; end points of the segment keep
/// only the subspaces that exist.
struct CommutatorBlockSet {
  std::size_t point = 0;
  BlockPosition position = BlockPosition::Interior;
  ComplexMatrix block;
  Complex backward{};  // a'_- = (a_l - a_{l-1}) / dx
  Complex forward{};   // a'_+ = (a_{l+1} - a_l) / dx
  double scale = 1.0;  // c
  double nu = 0.0;     // c sqrt(|a'_-|^2 + |a'_+|^2)
  BlockKernel kernel;
  std::optional<RotatedBlock> rotated;
};

/// Splits a commutator of `dirac` into column blocks. The derivatives are
/// read off the block entries assuming couplings of the form i c / dx.
/// Throws NotBlockDiagonal if any entry outside the blocks exceeds 1e-12.
std::vector<CommutatorBlockSet> blocks(const SparseOperator& c, const DiracOperator& dirac);

/// Kernel of an interior block: Omega ~ a'_+ e_{l-1,l} - a'_- e_{l+1,l},
/// unit norm, first nonzero component real positive.
BlockKernel block_kernel(const CommutatorBlockSet& b);

/// Throws InvalidArgument for boundary blocks and DegenerateBlock when both
/// derivatives vanish.
RotatedBlock rotate_block(const CommutatorBlockSet& b);

/// Compression of an interior block onto {(e_{l-1,l} + e_{l+1,l})/sqrt 2, e_ll},
/// the per-point part of the global limit frame.
Eigen::Matrix2cd project_to_limit_frame(const CommutatorBlockSet& b);

struct LimitFrame {
  ComplexVector minus;  // (+)_l e_{l-1,l}
  ComplexVector zero;   // (+)_l e_{l,l}
  ComplexVector plus;   // (+)_l e_{l+1,l}
};

/// Normalised summed vectors; circle only (ShapeUnsupported otherwise).
LimitFrame global_limit_frame(const TripleBasis& basis);

}  // namespace fintriple
