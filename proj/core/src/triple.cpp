#include "fintriple/triple.hpp"

#include "fintriple/error.hpp"
#include "fintriple/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace fintriple {

namespace {

// Position of row point i relative to column point j on the lattice.
int lattice_offset(Shape shape, std::size_t n, std::size_t i, std::size_t j) {
  if (i == j) return 0;
  if (has_previous(shape, j) && previous_point(shape, n, j) == i) return -1;
  if (has_next(shape, n, j) && next_point(shape, n, j) == i) return 1;
  throw Error(ErrorCode::InvalidArgument,
              "q_" + std::to_string(i) + std::to_string(j) + " is not a lattice neighbour");
}

}  // namespace

TripleBasis::TripleBasis(IntersectionMatrix q) : q_(std::move(q)) {
  const std::size_t n = q_.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const int value = q_(i, j);
      if (value == 0) continue;
      subspaces_.push_back(Subspace{i, j, std::abs(value), value > 0 ? 1 : -1,
                                    lattice_offset(q_.shape(), n, i, j), 0});
    }
  }
  std::stable_sort(subspaces_.begin(), subspaces_.end(), [](const Subspace& a, const Subspace& b) {
    return a.col != b.col ? a.col < b.col : a.offset < b.offset;
  });

  slot_.assign(n * n, -1);
  column_blocks_.assign(n, IndexRange{});
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < subspaces_.size(); ++k) {
    Subspace& s = subspaces_[k];
    s.start = cursor;
    slot_[s.row * n + s.col] = static_cast<std::ptrdiff_t>(k);
    IndexRange& block = column_blocks_[s.col];
    if (block.size == 0) block.begin = cursor;
    block.size += static_cast<std::size_t>(s.multiplicity);
    for (int copy = 0; copy < s.multiplicity; ++copy) {
      row_of_.push_back(s.row);
      col_of_.push_back(s.col);
    }
    cursor += static_cast<std::size_t>(s.multiplicity);
  }
}

const Subspace* TripleBasis::find(std::size_t row, std::size_t col) const {
  const std::size_t n = points();
  if (row >= n || col >= n) return nullptr;
  const std::ptrdiff_t k = slot_[row * n + col];
  return k < 0 ? nullptr : &subspaces_[static_cast<std::size_t>(k)];
}

const Subspace& TripleBasis::at(std::size_t row, std::size_t col) const {
  const Subspace* s = find(row, col);
  if (s == nullptr) {
    throw Error(ErrorCode::InvalidArgument,
                "no subspace H_(" + std::to_string(row) + "," + std::to_string(col) + ")");
  }
  return *s;
}

TripleBasis build_basis(const IntersectionMatrix& q) { return TripleBasis(q); }

Grading::Grading(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw Error(ErrorCode::InvalidArgument, "grading signs must be +-1");
  }
}

long Grading::trace() const noexcept {
  long t = 0;
  for (int s : signs_) t += s;
  return t;
}

ComplexVector Grading::apply(const ComplexVector& v) const {
  if (static_cast<std::size_t>(v.size()) != signs_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "grading applied to wrong-size vector");
  }
  ComplexVector out = v;
  for (std::size_t k = 0; k < signs_.size(); ++k) out[static_cast<Eigen::Index>(k)] *= signs_[k];
  return out;
}

SparseOperator Grading::as_operator() const {
  ComplexVector d(static_cast<Eigen::Index>(signs_.size()));
  for (std::size_t k = 0; k < signs_.size(); ++k) d[static_cast<Eigen::Index>(k)] = signs_[k];
  return diagonal_operator(d);
}

Grading grading(const TripleBasis& basis) {
  std::vector<int> signs;
  signs.reserve(basis.dimension());
  for (const Subspace& s : basis.subspaces()) signs.insert(signs.end(), s.multiplicity, s.sign);
  return Grading(std::move(signs));
}

RealStructure::RealStructure(std::vector<std::size_t> pairing) : pairing_(std::move(pairing)) {
  const std::size_t d = pairing_.size();
  for (std::size_t k = 0; k < d; ++k) {
    if (pairing_[k] >= d || pairing_[pairing_[k]] != k) {
      throw Error(ErrorCode::InvalidArgument, "real structure pairing is not an involution");
    }
  }
}

ComplexVector RealStructure::apply(const ComplexVector& v) const {
  if (static_cast<std::size_t>(v.size()) != pairing_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "real structure applied to wrong-size vector");
  }
  ComplexVector out(v.size());
  for (std::size_t k = 0; k < pairing_.size(); ++k) {
    out[static_cast<Eigen::Index>(pairing_[k])] = std::conj(v[static_cast<Eigen::Index>(k)]);
  }
  return out;
}

SparseOperator RealStructure::conjugate(const SparseOperator& m) const {
  const auto d = static_cast<Eigen::Index>(pairing_.size());
  if (m.rows() != d || m.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "real structure conjugating wrong-size operator");
  }
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(m, k); it; ++it) {
      entries.emplace_back(static_cast<Eigen::Index>(pairing_[static_cast<std::size_t>(it.row())]),
                           static_cast<Eigen::Index>(pairing_[static_cast<std::size_t>(it.col())]),
                           std::conj(it.value()));
    }
  }
  SparseOperator out(d, d);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

ComplexVector RealStructure::conjugate_diagonal(const ComplexVector& diag) const {
  if (static_cast<std::size_t>(diag.size()) != pairing_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "real structure conjugating wrong-size diagonal");
  }
  ComplexVector out(diag.size());
  for (std::size_t k = 0; k < pairing_.size(); ++k) {
    out[static_cast<Eigen::Index>(pairing_[k])] = std::conj(diag[static_cast<Eigen::Index>(k)]);
  }
  return out;
}

RealStructure real_structure(const TripleBasis& basis) {
  std::vector<std::size_t> pairing(basis.dimension());
  for (const Subspace& s : basis.subspaces()) {
    const Subspace& partner = basis.at(s.col, s.row);
    for (int copy = 0; copy < s.multiplicity; ++copy) {
      pairing[s.start + static_cast<std::size_t>(copy)] = partner.start + static_cast<std::size_t>(copy);
    }
  }
  return RealStructure(std::move(pairing));
}

AlgebraElement AlgebraElement::constant(std::size_t n, Complex value) {
  return AlgebraElement(std::vector<Complex>(n, value));
}

AlgebraElement AlgebraElement::conj() const {
  std::vector<Complex> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), [](Complex z) { return std::conj(z); });
  return AlgebraElement(std::move(out));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& other) const {
  if (other.size() != size()) throw Error(ErrorCode::DimensionMismatch, "algebra elements differ in size");
  std::vector<Complex> out(samples_.size());
  for (std::size_t l = 0; l < samples_.size(); ++l) out[l] = samples_[l] * other.samples_[l];
  return AlgebraElement(std::move(out));
}

SparseOperator diagonal_operator(const ComplexVector& diag) {
  const Eigen::Index d = diag.size();
  SparseOperator out(d, d);
  out.reserve(Eigen::VectorXi::Constant(d, 1));
  for (Eigen::Index k = 0; k < d; ++k) out.insert(k, k) = diag[k];
  out.makeCompressed();
  return out;
}

ComplexVector represent_diagonal(const AlgebraElement& a, const TripleBasis& basis) {
  if (a.size() != basis.points()) {
    throw Error(ErrorCode::DimensionMismatch, "algebra element has " + std::to_string(a.size()) +
                                                  " samples, lattice has " +
                                                  std::to_string(basis.points()));
  }
  ComplexVector d(static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t k = 0; k < basis.dimension(); ++k) d[static_cast<Eigen::Index>(k)] = a[basis.row_point(k)];
  return d;
}

ComplexVector represent_opposite_diagonal(const AlgebraElement& a, const TripleBasis& basis) {
  return real_structure(basis).conjugate_diagonal(represent_diagonal(a.conj(), basis));
}

SparseOperator represent(const AlgebraElement& a, const TripleBasis& basis) {
  return diagonal_operator(represent_diagonal(a, basis));
}

SparseOperator represent_opposite(const AlgebraElement& a, const TripleBasis& basis) {
  return diagonal_operator(represent_opposite_diagonal(a, basis));
}

}  // namespace fintriple
