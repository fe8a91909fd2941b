#include "fintriple/dirac.hpp"

#include "fintriple/error.hpp"
#include "fintriple/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fintriple {

double coupling_scale(Normalization normalization) noexcept {
  return normalization == Normalization::Unit ? 1.0 : 1.0 / std::sqrt(2.0);
}

std::string_view to_string(Normalization normalization) noexcept {
  return normalization == Normalization::Unit ? "unit" : "sqrt2";
}

std::optional<Normalization> parse_normalization(std::string_view text) noexcept {
  if (text == "sqrt2") return Normalization::Sqrt2Corrected;
  if (text == "unit") return Normalization::Unit;
  return std::nullopt;
}

namespace {

std::string describe(const CouplingKey& key) {
  std::ostringstream os;
  os << "m_{(" << key.from.row << "," << key.from.col << "),(" << key.to.row << "," << key.to.col << ")}";
  return os.str();
}

Complex lookup(const CouplingMap& couplings, const CouplingKey& key) {
  const auto it = couplings.find(key);
  return it == couplings.end() ? Complex(0.0) : it->second;
}

CouplingKey hermitian_partner(const CouplingKey& k) { return {k.to, k.from}; }
CouplingKey real_partner(const CouplingKey& k) { return {k.from.transposed(), k.to.transposed()}; }

void insert_closure(CouplingMap& out, const CouplingKey& key, Complex value) {
  out[key] = value;
  out[hermitian_partner(key)] = std::conj(value);
  out[real_partner(key)] = std::conj(value);
  out[hermitian_partner(real_partner(key))] = value;
}

SparseOperator assemble(const TripleBasis& basis, const CouplingMap& couplings) {
  const auto d = static_cast<Eigen::Index>(basis.dimension());
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(couplings.size());
  for (const auto& [key, value] : couplings) {
    const Subspace* from = basis.find(key.from.row, key.from.col);
    const Subspace* to = basis.find(key.to.row, key.to.col);
    if (from == nullptr || to == nullptr) {
      throw Error(ErrorCode::PatternViolation, describe(key) + " refers to an empty subspace");
    }
    if (from->multiplicity != 1 || to->multiplicity != 1) {
      throw Error(ErrorCode::InvalidArgument, "couplings are only defined for one-dimensional subspaces");
    }
    if (value == Complex(0.0)) continue;
    entries.emplace_back(static_cast<Eigen::Index>(from->start), static_cast<Eigen::Index>(to->start), value);
  }
  SparseOperator m(d, d);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

void check_constraints(const TripleBasis& basis, const CouplingMap& couplings) {
  constexpr double kSymmetryTolerance = 1e-12;
  for (const auto& [key, value] : couplings) {
    const Subspace* from = basis.find(key.from.row, key.from.col);
    const Subspace* to = basis.find(key.to.row, key.to.col);
    if (from == nullptr || to == nullptr) {
      throw Error(ErrorCode::PatternViolation, describe(key) + " refers to an empty subspace");
    }
    if (value == Complex(0.0)) continue;
    if (key.from.row != key.to.row && key.from.col != key.to.col) {
      throw Error(ErrorCode::PatternViolation, describe(key) + " has neither i = k nor j = l");
    }
    if (from->sign == to->sign) {
      throw Error(ErrorCode::ChiralityViolation, describe(key) + " couples subspaces of equal grading");
    }
  }
  for (const auto& [key, value] : couplings) {
    const double hermitian = std::abs(value - std::conj(lookup(couplings, hermitian_partner(key))));
    const double real = std::abs(value - std::conj(lookup(couplings, real_partner(key))));
    if (hermitian > kSymmetryTolerance || real > kSymmetryTolerance) {
      throw Error(ErrorCode::SymmetryViolation, describe(key) + " breaks m_{ij,kl} = conj(m_{kl,ij}) " +
                                                    "or m_{ij,kl} = conj(m_{ji,lk})");
    }
  }
}

}  // namespace

CouplingMap default_couplings(const TripleBasis& basis, double spacing, Normalization normalization) {
  if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "lattice spacing must be positive");
  const Shape shape = basis.shape();
  const std::size_t n = basis.points();
  const Complex m = kI * coupling_scale(normalization) / spacing;

  CouplingMap out;
  for (std::size_t l = 0; l < n; ++l) {
    if (has_previous(shape, l)) {
      insert_closure(out, {{previous_point(shape, n, l), l}, {l, l}}, m);
    }
    if (has_next(shape, n, l)) {
      insert_closure(out, {{l, l}, {next_point(shape, n, l), l}}, m);
    }
  }
  return out;
}

DiracOperator::DiracOperator(std::shared_ptr<const TripleBasis> basis, SparseOperator matrix,
                             CouplingMap couplings, double spacing, Normalization normalization)
    : basis_(std::move(basis)),
      matrix_(std::move(matrix)),
      couplings_(std::move(couplings)),
      spacing_(spacing),
      normalization_(normalization) {}

DiracOperator build_dirac(std::shared_ptr<const TripleBasis> basis, CouplingMap couplings, double spacing,
                          Normalization normalization) {
  if (!basis) throw Error(ErrorCode::InvalidArgument, "null basis");
  check_constraints(*basis, couplings);
  SparseOperator m = assemble(*basis, couplings);
  return DiracOperator(std::move(basis), std::move(m), std::move(couplings), spacing, normalization);
}

DiracOperator assemble_dirac_unchecked(std::shared_ptr<const TripleBasis> basis, CouplingMap couplings,
                                       double spacing, Normalization normalization) {
  if (!basis) throw Error(ErrorCode::InvalidArgument, "null basis");
  SparseOperator m = assemble(*basis, couplings);
  return DiracOperator(std::move(basis), std::move(m), std::move(couplings), spacing, normalization);
}

bool AxiomReport::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

double AxiomReport::max_residual() const noexcept {
  double out = 0.0;
  for (const AxiomCheck& c : checks) out = std::max(out, c.max_residual);
  return out;
}

const AxiomCheck& AxiomReport::check(std::string_view name) const {
  for (const AxiomCheck& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "no axiom check named " + std::string(name));
}

std::vector<AlgebraElement> sample_algebra_elements(std::size_t site_count, std::size_t count,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<AlgebraElement> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<Complex> samples(site_count);
    for (Complex& z : samples) {
      const double re = uniform(rng);
      const double im = uniform(rng);
      z = Complex(re, im);
    }
    out.emplace_back(std::move(samples));
  }
  return out;
}

AxiomReport validate_axioms(const TripleView& triple, std::uint64_t seed, double tolerance) {
  const SparseOperator& d = triple.dirac;
  const auto dim = static_cast<std::size_t>(d.rows());
  if (static_cast<std::size_t>(d.cols()) != dim || triple.grading.dimension() != dim ||
      triple.reality.dimension() != dim || triple.sites.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "triple components disagree on the Hilbert space dimension");
  }
  for (std::size_t s : triple.sites) {
    if (s >= triple.site_count) throw Error(ErrorCode::DimensionMismatch, "site index out of range");
  }

  const SparseOperator adjoint = d.adjoint();
  const double self_adjoint = max_abs(SparseOperator(d - adjoint));

  double anticommutator = 0.0;
  for (int k = 0; k < d.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(d, k); it; ++it) {
      const int g = triple.grading[static_cast<std::size_t>(it.row())] +
                    triple.grading[static_cast<std::size_t>(it.col())];
      anticommutator = std::max(anticommutator, std::abs(it.value() * static_cast<double>(g)));
    }
  }

  const double reality = max_abs(SparseOperator(triple.reality.conjugate(d) - d));

  const auto elements = sample_algebra_elements(triple.site_count, kAxiomSampleCount, seed);
  std::vector<ComplexVector> left;
  std::vector<ComplexVector> opposite;
  for (const AlgebraElement& a : elements) {
    ComplexVector diag(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) diag[static_cast<Eigen::Index>(k)] = a[triple.sites[k]];
    opposite.push_back(triple.reality.conjugate_diagonal(diag));
    left.push_back(std::move(diag));
  }

  double zero_order = 0.0;
  double first_order = 0.0;
  for (const ComplexVector& a : left) {
    const SparseOperator da = commutator_with_diagonal(d, a);
    for (const ComplexVector& b : opposite) {
      // Both are diagonal, so the commutator is diagonal too.
      zero_order = std::max(zero_order, (a.cwiseProduct(b) - b.cwiseProduct(a)).cwiseAbs().maxCoeff());
      first_order = std::max(first_order, max_abs(commutator_with_diagonal(da, b)));
    }
  }

  AxiomReport report;
  report.tolerance = tolerance;
  auto add = [&](std::string_view name, double residual) {
    report.checks.push_back(AxiomCheck{std::string(name), residual, residual < tolerance});
  };
  add(axiom::kSelfAdjoint, self_adjoint);
  add(axiom::kGradingAnticommutes, anticommutator);
  add(axiom::kRealityCommutes, reality);
  add(axiom::kZeroOrder, zero_order);
  add(axiom::kFirstOrder, first_order);
  return report;
}

TripleView Triple::view() const {
  return TripleView{dirac.matrix(), grading, reality, basis->row_points(), basis->points()};
}

Triple make_triple(DiracOperator dirac) {
  auto basis = dirac.shared_basis();
  return Triple{basis, grading(*basis), real_structure(*basis), std::move(dirac)};
}

Triple make_default_triple(Shape shape, std::size_t n, Normalization normalization) {
  auto basis = std::make_shared<const TripleBasis>(build_basis(build_q(shape, n)));
  const double dx = lattice_spacing(shape, n);
  CouplingMap couplings = default_couplings(*basis, dx, normalization);
  return make_triple(build_dirac(basis, std::move(couplings), dx, normalization));
}

AxiomReport validate_axioms(const Triple& triple, std::uint64_t seed, double tolerance) {
  return validate_axioms(triple.view(), seed, tolerance);
}

}  // namespace fintriple
