#include "fintriple/linalg.hpp"

#include <algorithm>

namespace fintriple {

double max_abs(const SparseOperator& m) {
  double out = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

SparseOperator commutator_with_diagonal(const SparseOperator& m, const ComplexVector& d) {
  SparseOperator out = m;
  for (int k = 0; k < out.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(out, k); it; ++it) {
      it.valueRef() *= d[it.col()] - d[it.row()];
    }
  }
  return out;
}

}  // namespace fintriple
