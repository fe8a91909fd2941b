#pragma once

// Product of two even finite triples: H = H1 (x) H2, D2 = D (x) 1 + g (x) D,
// g2 = g (x) g, J2 = J (x) J. Basis index is factor-major, i1 * d2 + i2.

#include "fintriple/dirac.hpp"
#include "fintriple/sampling.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fintriple {

/// Kronecker product of sparse operators, factor-major.
SparseOperator kron(const SparseOperator& a, const SparseOperator& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

class ProductTriple {
 public:
  const Triple& first() const noexcept { return first_; }
  const Triple& second() const noexcept { return second_; }

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(dirac_.rows()); }
  std::size_t index(std::size_t first_index, std::size_t second_index) const noexcept {
    return first_index * first_dim_stride() + second_index;
  }

  const SparseOperator& dirac() const noexcept { return dirac_; }
  const Grading& grading() const noexcept { return grading_; }
  const RealStructure& reality() const noexcept { return reality_; }

  /// Sites of the product lattice, site (l, m) = l * n2 + m.
  std::span<const std::size_t> sites() const noexcept { return sites_; }
  std::size_t site_count() const noexcept { return first_.basis->points() * second_.basis->points(); }

  const AxiomReport& report() const noexcept { return report_; }
  TripleView view() const;

 private:
  ProductTriple(Triple first, Triple second);
  friend ProductTriple tensor_triple(Triple first, Triple second, std::uint64_t seed);

  std::size_t first_dim_stride() const noexcept { return second_.basis->dimension(); }

  Triple first_;
  Triple second_;
  SparseOperator dirac_;
  Grading grading_;
  RealStructure reality_;
  std::vector<std::size_t> sites_;
  AxiomReport report_;
};

inline constexpr double kProductAxiomTolerance = 1e-10;

/// Both factors must pass validate_axioms, and so must the product at
/// kProductAxiomTolerance; otherwise throws AxiomFailure.
ProductTriple tensor_triple(Triple first, Triple second, std::uint64_t seed = kDefaultSeed);

/// Product algebra element with samples a_l b_m at site (l, m).
AlgebraElement tensor_element(const AlgebraElement& a, const AlgebraElement& b);

/// [D2, pi(a) (x) pi(b)] from the product operator directly.
SparseOperator product_commutator(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b);

/// [D, pi(a)] (x) pi(b) + g pi(a) (x) [D, pi(b)] from the factors.
SparseOperator leibniz_expansion(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b);

/// Largest entrywise difference between the two routes above.
double leibniz_residual(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b);

/// The 9x9 column block (l, m) of [D2, pi(a) (x) pi(b)] compressed onto
/// F_l (x) F_m with F = {(e_{l-1,l} + e_{l+1,l})/sqrt 2, e_ll}.
/// `first_term` and `second_term` are the compressions of the two Leibniz
/// terms (G1, G2); `pauli` holds Tr((s_mu (x) s_nu) M)/4 at mu * 4 + nu with
/// s_0 = 1 and s_1..s_3 the Pauli matrices.
struct FrameProjection {
  std::size_t l = 0;
  std::size_t m = 0;
  Eigen::Matrix4cd block;
  Eigen::Matrix4cd first_term;
  Eigen::Matrix4cd second_term;
  std::array<Complex, 16> pauli{};
  double top_singular_value = 0.0;
  double anticommutator_norm = 0.0;  // spectral norm of G1 G2 + G2 G1
};

/// Both factors must be circles (ShapeUnsupported). Throws DegenerateBlock
/// when a'_-(l), a'_+(l), b'_-(m), b'_+(m) all vanish.
FrameProjection project_block_2d(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b,
                                 std::size_t l, std::size_t m);
std::vector<FrameProjection> limit_frame_2d(const ProductTriple& p, const AlgebraElement& a,
                                            const AlgebraElement& b);

/// Continuum singular value of i a' b s1 (x) 1 + i a b' s3 (x) s1 scaled by
/// sqrt(2) c: sqrt(|x|^2 + |y|^2 + 2 |Im(conj(x) y)|), x = a' b, y = a b'.
double continuum_top_singular_value(Complex a, Complex da, Complex b, Complex db, double weight = 1.0);

struct LimitStudyRow {
  std::size_t n = 0;
  double spacing = 0.0;
  double max_anticommutator = 0.0;
  double max_singular_value_error = 0.0;
  double top_singular_value = 0.0;  // at the worst point
  double reference = 0.0;
};

struct LimitStudy {
  std::vector<LimitStudyRow> rows;  // sorted by n
  std::optional<double> anticommutator_order;
  std::optional<double> singular_value_order;
};

/// circle(n) (x) circle(n) for each n; sizes run concurrently.
LimitStudy limit_study_2d(const TestFunction& fx, const TestFunction& fy, std::span<const std::size_t> sizes,
                          Normalization normalization = Normalization::Sqrt2Corrected,
                          std::uint64_t seed = kDefaultSeed);

}  // namespace fintriple
