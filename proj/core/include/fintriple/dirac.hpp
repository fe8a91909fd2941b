#pragma once

#include "fintriple/linalg.hpp"
#include "fintriple/triple.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fintriple {

/// Overall coupling scale c in m = i c / dx. Sqrt2Corrected (c = 1/sqrt 2)
/// makes the nonzero singular value of each commutator block tend to |a'|;
/// Unit (c = 1) leaves an extra factor sqrt 2 in the limit.
enum class Normalization { Sqrt2Corrected, Unit };

double coupling_scale(Normalization normalization) noexcept;
std::string_view to_string(Normalization normalization) noexcept;
std::optional<Normalization> parse_normalization(std::string_view text) noexcept;

struct SubspaceKey {
  std::size_t row;
  std::size_t col;
  auto operator<=>(const SubspaceKey&) const = default;
  SubspaceKey transposed() const noexcept { return {col, row}; }
};

/// m_{ij,kl}: the matrix element of D between H_ij (from) and H_kl (to).
struct CouplingKey {
  SubspaceKey from;
  SubspaceKey to;
  auto operator<=>(const CouplingKey&) const = default;
};

using CouplingMap = std::map<CouplingKey, Complex>;

/// Forward couplings m_{l-1 l, l l} = m_{l l, l+1 l} = i c / dx, closed under
/// m_{ij,kl} = conj(m_{kl,ij}) and m_{ij,kl} = conj(m_{ji,lk}).
CouplingMap default_couplings(const TripleBasis& basis, double spacing, Normalization normalization);

class DiracOperator {
 public:
  const TripleBasis& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const TripleBasis>& shared_basis() const noexcept { return basis_; }
  const SparseOperator& matrix() const noexcept { return matrix_; }
  const CouplingMap& couplings() const noexcept { return couplings_; }
  double spacing() const noexcept { return spacing_; }
  Normalization normalization() const noexcept { return normalization_; }
  double scale() const noexcept { return coupling_scale(normalization_); }

 private:
  DiracOperator(std::shared_ptr<const TripleBasis> basis, SparseOperator matrix, CouplingMap couplings,
                double spacing, Normalization normalization);

  friend DiracOperator build_dirac(std::shared_ptr<const TripleBasis>, CouplingMap, double, Normalization);
  friend DiracOperator assemble_dirac_unchecked(std::shared_ptr<const TripleBasis>, CouplingMap, double,
                                                Normalization);

  std::shared_ptr<const TripleBasis> basis_;
  SparseOperator matrix_;
  CouplingMap couplings_;
  double spacing_;
  Normalization normalization_;
};

/// Rejects couplings with neither i = k nor j = l (PatternViolation), between
/// subspaces of equal grading (ChiralityViolation), or whose hermitian or
/// real partner differs by more than 1e-12 (SymmetryViolation). Checks run in
/// that order.
DiracOperator build_dirac(std::shared_ptr<const TripleBasis> basis, CouplingMap couplings, double spacing,
                          Normalization normalization);

/// Writes every coupling literally into the matrix without any constraint
/// check. Used to validate externally supplied operators.
DiracOperator assemble_dirac_unchecked(std::shared_ptr<const TripleBasis> basis, CouplingMap couplings,
                                       double spacing, Normalization normalization);

struct AxiomCheck {
  std::string name;
  double max_residual = 0.0;
  bool pass = false;
};

struct AxiomReport {
  double tolerance = 0.0;
  std::vector<AxiomCheck> checks;

  bool all_pass() const noexcept;
  double max_residual() const noexcept;
  const AxiomCheck& check(std::string_view name) const;
};

namespace axiom {
inline constexpr std::string_view kSelfAdjoint = "self_adjoint";
inline constexpr std::string_view kGradingAnticommutes = "grading_anticommutes";
inline constexpr std::string_view kRealityCommutes = "reality_commutes";
inline constexpr std::string_view kZeroOrder = "zero_order";
inline constexpr std::string_view kFirstOrder = "first_order";
}  // namespace axiom

inline constexpr std::uint64_t kDefaultSeed = 1729;
inline constexpr std::size_t kAxiomSampleCount = 8;
inline constexpr double kAxiomTolerance = 1e-12;

/// Everything the axiom checks need. The algebra is functions on `site_count`
/// sites, acting on basis vector k by multiplication with a(sites[k]).
struct TripleView {
  const SparseOperator& dirac;
  const Grading& grading;
  const RealStructure& reality;
  std::span<const std::size_t> sites;
  std::size_t site_count;
};

/// Residuals of D = D*, D g + g D = 0, J D = D J, [pi(a), J pi(b) J^-1] = 0
/// and [[D, pi(a)], J pi(b) J^-1] = 0, the last two over all pairs of
/// kAxiomSampleCount pseudorandom complex algebra elements drawn from `seed`.
AxiomReport validate_axioms(const TripleView& triple, std::uint64_t seed = kDefaultSeed,
                            double tolerance = kAxiomTolerance);

/// Pseudorandom algebra elements used by validate_axioms.
std::vector<AlgebraElement> sample_algebra_elements(std::size_t site_count, std::size_t count,
                                                    std::uint64_t seed);

/// A one-dimensional triple with its Dirac operator.
struct Triple {
  std::shared_ptr<const TripleBasis> basis;
  Grading grading;
  RealStructure reality;
  DiracOperator dirac;

  TripleView view() const;
};

Triple make_triple(DiracOperator dirac);
/// Default couplings on the standard lattice for `shape`.
Triple make_default_triple(Shape shape, std::size_t n, Normalization normalization = Normalization::Sqrt2Corrected);

AxiomReport validate_axioms(const Triple& triple, std::uint64_t seed = kDefaultSeed,
                            double tolerance = kAxiomTolerance);

}  // namespace fintriple
