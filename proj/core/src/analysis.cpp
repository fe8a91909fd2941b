#include "fintriple/analysis.hpp"

#include "fintriple/calculus.hpp"
#include "fintriple/error.hpp"
#include "fintriple/lattice.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>

namespace fintriple {

std::optional<double> fit_order(std::span<const double> spacings, std::span<const double> errors) {
  constexpr double kFloor = 1e-13;
  if (spacings.size() != errors.size()) {
    throw Error(ErrorCode::DimensionMismatch, "fit_order needs matching spacing and error lists");
  }
  if (spacings.size() < 2) return std::nullopt;
  const auto count = static_cast<double>(spacings.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < spacings.size(); ++k) {
    if (!(errors[k] > kFloor) || !(spacings[k] > 0.0)) return std::nullopt;
    const double x = std::log(spacings[k]);
    const double y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (count * sxy - sx * sy) / denom;
}

namespace {

ConvergenceRecord nu_error(const TestFunction& fn, Shape shape, std::size_t n, Normalization normalization) {
  const Triple triple = make_default_triple(shape, n, normalization);
  const AlgebraElement a = fn.sample(shape, n);
  const auto set = blocks(commutator(triple.dirac, a), triple.dirac);
  const double weight = std::sqrt(2.0) * coupling_scale(normalization);

  ConvergenceRecord rec;
  rec.n = n;
  rec.spacing = lattice_spacing(shape, n);
  rec.metric = std::string(kNuErrorMetric);
  rec.error = -1.0;
  for (const CommutatorBlockSet& b : set) {
    if (b.position != BlockPosition::Interior) continue;
    const double reference = weight * std::abs(fn.derivative(lattice_coordinate(shape, n, b.point)));
    const double error = std::abs(b.nu - reference);
    if (error > rec.error) {
      rec.error = error;
      rec.value = b.nu;
      rec.reference = reference;
    }
  }
  if (rec.error < 0.0) throw Error(ErrorCode::InvalidArgument, "lattice has no interior points");
  return rec;
}

}  // namespace

ConvergenceStudy converge_1d(const TestFunction& fn, Shape shape, std::span<const std::size_t> sizes,
                             Normalization normalization) {
  if (!fn.has_derivative()) {
    throw Error(ErrorCode::InvalidArgument, "convergence needs a function with a known derivative");
  }
  std::vector<std::size_t> ns(sizes.begin(), sizes.end());
  std::sort(ns.begin(), ns.end());
  for (std::size_t n : ns) {
    if (is_degenerate(shape, n)) {
      throw Error(ErrorCode::DegenerateSize, std::string(to_string(shape)) + " n=" + std::to_string(n) +
                                                 " has det(q) = 0");
    }
  }

  std::vector<std::future<ConvergenceRecord>> jobs;
  jobs.reserve(ns.size());
  for (std::size_t n : ns) {
    jobs.push_back(std::async(std::launch::async, nu_error, std::cref(fn), shape, n, normalization));
  }
  ConvergenceStudy study;
  std::vector<double> spacings;
  std::vector<double> errors;
  for (auto& job : jobs) {
    study.records.push_back(job.get());
    spacings.push_back(study.records.back().spacing);
    errors.push_back(study.records.back().error);
  }
  study.order = fit_order(spacings, errors);
  return study;
}

SpectrumRecord spectrum(const SparseOperator& matrix, std::size_t n) {
  const ComplexMatrix dense(matrix);
  const double scale = std::max(1.0, max_abs(dense));
  if (max_abs(ComplexMatrix(dense - dense.adjoint())) > 1e-10 * scale) {
    throw Error(ErrorCode::InvalidArgument, "spectrum needs a self-adjoint operator");
  }
  SpectrumRecord rec;
  rec.n = n;
  if (dense.rows() == 0) return rec;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(dense, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = solver.eigenvalues();
  rec.eigenvalues.assign(values.data(), values.data() + values.size());
  const double largest = std::max(std::abs(rec.eigenvalues.front()), std::abs(rec.eigenvalues.back()));
  const double zero = 1e-10 * std::max(1.0, largest);
  rec.kernel_dim = static_cast<std::size_t>(
      std::count_if(rec.eigenvalues.begin(), rec.eigenvalues.end(), [&](double l) { return std::abs(l) <= zero; }));
  return rec;
}

SpectrumRecord spectrum(const DiracOperator& dirac) { return spectrum(dirac.matrix(), dirac.basis().points()); }

double spectral_symmetry_residual(const SpectrumRecord& record) {
  const auto& e = record.eigenvalues;
  double out = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) out = std::max(out, std::abs(e[k] + e[e.size() - 1 - k]));
  return out;
}

ZetaResult zeta_action(const SpectrumRecord& record, double s, std::size_t cutoff) {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "zeta_action needs s > 0");
  if (cutoff == 0) throw Error(ErrorCode::InvalidArgument, "zeta_action needs a positive cutoff");
  double largest = 0.0;
  for (double l : record.eigenvalues) largest = std::max(largest, std::abs(l));
  const double zero = 1e-10 * std::max(1.0, largest);

  std::vector<double> moduli;
  for (double l : record.eigenvalues) {
    if (std::abs(l) > zero) moduli.push_back(std::abs(l));
  }
  if (moduli.empty()) throw Error(ErrorCode::AllZeroSpectrum, "no nonzero eigenvalues");
  std::sort(moduli.begin(), moduli.end());

  ZetaResult z;
  z.s = s;
  z.terms = std::min(cutoff, moduli.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < z.terms; ++k) {
    sum += std::pow(moduli[k], -s);
    z.partial_sums.push_back(sum);
    z.log_normalized.push_back(sum / std::log(static_cast<double>(k) + 2.0));
  }
  z.value = sum;
  return z;
}

ZetaResult zeta_action(const DiracOperator& dirac, double s, std::size_t cutoff) {
  return zeta_action(spectrum(dirac), s, cutoff);
}

std::vector<SurveyRow> degeneracy_survey(Shape shape, std::size_t n_max) {
  std::vector<SurveyRow> rows;
  for (std::size_t n = min_size(shape); n <= n_max; ++n) {
    const IntersectionMatrix q = build_q(shape, n);
    rows.push_back(SurveyRow{n, determinant(q), kernel_dimension(q)});
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const ConvergenceRecord> records) {
  const auto precision = out.precision();
  out << "n,dx,metric,value,reference,error\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const ConvergenceRecord& r : records) {
    out << r.n << ',' << r.spacing << ',' << r.metric << ',' << r.value << ',' << r.reference << ','
        << r.error << '\n';
  }
  out.precision(precision);
}

}  // namespace fintriple
