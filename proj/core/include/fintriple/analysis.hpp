#pragma once

// Convergence sweeps, Dirac spectra and degeneracy surveys.

#include "fintriple/dirac.hpp"
#include "fintriple/qmatrix.hpp"
#include "fintriple/sampling.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace fintriple {

struct ConvergenceRecord {
  std::size_t n = 0;
  double spacing = 0.0;
  std::string metric;
  double value = 0.0;
  double reference = 0.0;
  double error = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRecord> records;  // sorted by n
  std::optional<double> order;
};

/// Least-squares slope of log(error) against log(spacing). Empty when fewer
/// than two points or when an error is at rounding level (below 1e-13).
std::optional<double> fit_order(std::span<const double> spacings, std::span<const double> errors);

inline constexpr std::string_view kNuErrorMetric = "nu_max_abs_error";

/// For each n: max over interior points of |nu_l - sqrt(2) c |a'(x_l)||,
/// reported at the worst point. Sizes run concurrently; records come back
/// ordered by n. Throws DegenerateSize if any det(q) = 0.
ConvergenceStudy converge_1d(const TestFunction& fn, Shape shape, std::span<const std::size_t> sizes,
                             Normalization normalization = Normalization::Sqrt2Corrected);

struct SpectrumRecord {
  std::size_t n = 0;
  std::vector<double> eigenvalues;  // ascending
  std::size_t kernel_dim = 0;
};

/// Dense hermitian eigensolve. Eigenvalues with |lambda| <= 1e-10 max(1, |lambda|_max)
/// count towards kernel_dim.
SpectrumRecord spectrum(const DiracOperator& dirac);
SpectrumRecord spectrum(const SparseOperator& matrix, std::size_t n = 0);

/// max_k |lambda_k + lambda_{dim-1-k}| over the sorted spectrum.
double spectral_symmetry_residual(const SpectrumRecord& record);

/// Exploratory zeta sum: the `cutoff` largest terms |lambda|^-s over nonzero
/// eigenvalues (smallest |lambda| first), with running partial sums and the
/// same sums divided by log(1 + k) as a Dixmier-trace proxy.
struct ZetaResult {
  double s = 0.0;
  std::size_t terms = 0;
  double value = 0.0;
  std::vector<double> partial_sums;
  std::vector<double> log_normalized;
};

ZetaResult zeta_action(const SpectrumRecord& record, double s, std::size_t cutoff);
ZetaResult zeta_action(const DiracOperator& dirac, double s, std::size_t cutoff);

struct SurveyRow {
  std::size_t n = 0;
  BigInt det;
  std::size_t kernel_dim = 0;
};

std::vector<SurveyRow> degeneracy_survey(Shape shape, std::size_t n_max);

/// Header "n,dx,metric,value,reference,error", full double precision.
void write_csv(std::ostream& out, std::span<const ConvergenceRecord> records);

}  // namespace fintriple
