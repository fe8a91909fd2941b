#pragma once

// Finite Hilbert space H = (+) H_ij built from an intersection matrix, with
// the grading, the real structure and the left/right actions of the algebra
// of lattice functions.

#include "fintriple/linalg.hpp"
#include "fintriple/qmatrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fintriple {

/// One summand H_ij. `offset` locates the row point relative to the column
/// point on the lattice: -1 for i = j-1, 0 for i = j, +1 for i = j+1.
struct Subspace {
  std::size_t row;
  std::size_t col;
  int multiplicity;
  int sign;
  int offset;
  std::size_t start;
};

struct IndexRange {
  std::size_t begin = 0;
  std::size_t size = 0;
};

class TripleBasis {
 public:
  const IntersectionMatrix& q() const noexcept { return q_; }
  Shape shape() const noexcept { return q_.shape(); }
  std::size_t points() const noexcept { return q_.size(); }
  std::size_t dimension() const noexcept { return row_of_.size(); }

  /// Ordered by column, then by offset -1, 0, +1, so each column block
  /// H_{l-1,l} (+) H_{l,l} (+) H_{l+1,l} is a contiguous index range.
  std::span<const Subspace> subspaces() const noexcept { return subspaces_; }

  const Subspace* find(std::size_t row, std::size_t col) const;
  const Subspace& at(std::size_t row, std::size_t col) const;

  /// First basis index of H_ij; throws InvalidArgument when q_ij = 0.
  std::size_t index(std::size_t row, std::size_t col) const { return at(row, col).start; }

  std::size_t row_point(std::size_t basis_index) const { return row_of_[basis_index]; }
  std::size_t col_point(std::size_t basis_index) const { return col_of_[basis_index]; }
  std::span<const std::size_t> row_points() const noexcept { return row_of_; }
  std::span<const std::size_t> col_points() const noexcept { return col_of_; }

  IndexRange column_block(std::size_t l) const { return column_blocks_.at(l); }

 private:
  explicit TripleBasis(IntersectionMatrix q);
  friend TripleBasis build_basis(const IntersectionMatrix& q);

  IntersectionMatrix q_;
  std::vector<Subspace> subspaces_;
  std::vector<std::ptrdiff_t> slot_;  // n*n, index into subspaces_ or -1
  std::vector<std::size_t> row_of_;
  std::vector<std::size_t> col_of_;
  std::vector<IndexRange> column_blocks_;
};

TripleBasis build_basis(const IntersectionMatrix& q);

class Grading {
 public:
  /// Throws InvalidArgument unless every sign is +1 or -1.
  explicit Grading(std::vector<int> signs);

  std::span<const int> signs() const noexcept { return signs_; }
  std::size_t dimension() const noexcept { return signs_.size(); }
  int operator[](std::size_t k) const { return signs_[k]; }
  long trace() const noexcept;

  ComplexVector apply(const ComplexVector& v) const;
  SparseOperator as_operator() const;

 private:
  std::vector<int> signs_;
};

/// Sign of q_ij on every basis vector of H_ij.
Grading grading(const TripleBasis& basis);

/// Antilinear J v = P conj(v) for a permutation P of basis indices.
class RealStructure {
 public:
  /// Throws InvalidArgument unless `pairing` is an involutive permutation.
  explicit RealStructure(std::vector<std::size_t> pairing);

  std::span<const std::size_t> pairing() const noexcept { return pairing_; }
  std::size_t dimension() const noexcept { return pairing_.size(); }

  ComplexVector apply(const ComplexVector& v) const;

  /// The linear operator J M J^-1 = P conj(M) P^T.
  SparseOperator conjugate(const SparseOperator& m) const;
  /// Same for a diagonal operator given by its diagonal.
  ComplexVector conjugate_diagonal(const ComplexVector& diag) const;

 private:
  std::vector<std::size_t> pairing_;
};

/// J e_ij = e_ji (copy by copy for multiplicities above one).
RealStructure real_structure(const TripleBasis& basis);

/// Complex samples a_l = a(x_l) of a lattice function.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::vector<Complex> samples) : samples_(std::move(samples)) {}

  static AlgebraElement constant(std::size_t n, Complex value = 1.0);

  std::size_t size() const noexcept { return samples_.size(); }
  Complex operator[](std::size_t l) const { return samples_[l]; }
  std::span<const Complex> samples() const noexcept { return samples_; }

  AlgebraElement conj() const;
  AlgebraElement operator*(const AlgebraElement& other) const;

 private:
  std::vector<Complex> samples_;
};

/// Diagonal of pi(a): a_i on H_ij.
ComplexVector represent_diagonal(const AlgebraElement& a, const TripleBasis& basis);
/// Diagonal of J pi(a*) J^-1: a_j on H_ij.
ComplexVector represent_opposite_diagonal(const AlgebraElement& a, const TripleBasis& basis);

SparseOperator represent(const AlgebraElement& a, const TripleBasis& basis);
SparseOperator represent_opposite(const AlgebraElement& a, const TripleBasis& basis);

SparseOperator diagonal_operator(const ComplexVector& diag);

}  // namespace fintriple
