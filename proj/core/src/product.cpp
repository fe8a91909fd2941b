#include "fintriple/product.hpp"

#include "fintriple/analysis.hpp"
#include "fintriple/calculus.hpp"
#include "fintriple/error.hpp"
#include "fintriple/lattice.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <future>

namespace fintriple {

SparseOperator kron(const SparseOperator& a, const SparseOperator& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseOperator::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseOperator::InnerIterator ib(b, kb); ib; ++ib) {
          entries.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                               ia.value() * ib.value());
        }
      }
    }
  }
  SparseOperator out(rows, cols);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

namespace {

SparseOperator identity(std::size_t d) {
  SparseOperator id(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  id.setIdentity();
  return id;
}

ComplexVector grading_diagonal(const Grading& g) {
  ComplexVector d(static_cast<Eigen::Index>(g.dimension()));
  for (std::size_t k = 0; k < g.dimension(); ++k) d[static_cast<Eigen::Index>(k)] = g[k];
  return d;
}

void require_valid(const Triple& t, std::uint64_t seed, const char* which) {
  const AxiomReport r = validate_axioms(t, seed);
  if (!r.all_pass()) {
    throw Error(ErrorCode::AxiomFailure, std::string(which) + " factor fails the axioms (max residual " +
                                             std::to_string(r.max_residual()) + ")");
  }
}

Grading product_grading(const Grading& a, const Grading& b) {
  std::vector<int> signs;
  signs.reserve(a.dimension() * b.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    for (std::size_t j = 0; j < b.dimension(); ++j) signs.push_back(a[i] * b[j]);
  }
  return Grading(std::move(signs));
}

RealStructure product_reality(const RealStructure& a, const RealStructure& b) {
  const auto pa = a.pairing();
  const auto pb = b.pairing();
  std::vector<std::size_t> pairing;
  pairing.reserve(pa.size() * pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) pairing.push_back(pa[i] * pb.size() + pb[j]);
  }
  return RealStructure(std::move(pairing));
}

// Local index of H_{row,l} inside the column block of l.
Eigen::Index local_index(const TripleBasis& basis, std::size_t row, std::size_t l) {
  return static_cast<Eigen::Index>(basis.index(row, l) - basis.column_block(l).begin);
}

Eigen::Matrix<Complex, 3, 2> limit_frame(const TripleBasis& basis, std::size_t l) {
  const std::size_t n = basis.points();
  Eigen::Matrix<Complex, 3, 2> f = Eigen::Matrix<Complex, 3, 2>::Zero();
  const double w = 1.0 / std::sqrt(2.0);
  f(local_index(basis, previous_point(Shape::Circle, n, l), l), 0) = w;
  f(local_index(basis, next_point(Shape::Circle, n, l), l), 0) = w;
  f(local_index(basis, l, l), 1) = 1.0;
  return f;
}

using Matrix9 = Eigen::Matrix<Complex, 9, 9>;
using Matrix3 = Eigen::Matrix3cd;

Matrix3 dense_block(const SparseOperator& m, const IndexRange& r) {
  const auto b = static_cast<Eigen::Index>(r.begin);
  return Matrix3(ComplexMatrix(m.block(b, b, 3, 3)));
}

Matrix9 kron3(const Matrix3& a, const Matrix3& b) {
  Matrix9 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  }
  return out;
}

const Eigen::Matrix2cd& pauli(int k) {
  static const std::array<Eigen::Matrix2cd, 4> s = [] {
    std::array<Eigen::Matrix2cd, 4> out;
    out[0] << 1, 0, 0, 1;
    out[1] << 0, 1, 1, 0;
    out[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    out[3] << 1, 0, 0, -1;
    return out;
  }();
  return s[static_cast<std::size_t>(k)];
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

double spectral_norm(const Eigen::Matrix4cd& m) {
  return Eigen::JacobiSVD<Eigen::Matrix4cd>(m).singularValues()(0);
}

bool derivatives_vanish(const AlgebraElement& a, std::size_t l) {
  const std::size_t n = a.size();
  const Complex back = a[l] - a[previous_point(Shape::Circle, n, l)];
  const Complex fwd = a[next_point(Shape::Circle, n, l)] - a[l];
  return back == Complex(0.0) && fwd == Complex(0.0);
}

struct FactorData {
  SparseOperator commutator_a;
  SparseOperator commutator_b;
};

FrameProjection project(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b,
                        const FactorData& f, std::size_t l, std::size_t m) {
  const TripleBasis& b1 = *p.first().basis;
  const TripleBasis& b2 = *p.second().basis;
  if (derivatives_vanish(a, l) && derivatives_vanish(b, m)) {
    throw Error(ErrorCode::DegenerateBlock, "all derivatives vanish at (" + std::to_string(l) + ", " +
                                                std::to_string(m) + ")");
  }
  const IndexRange r1 = b1.column_block(l);
  const IndexRange r2 = b2.column_block(m);

  Matrix3 gamma_a = Matrix3::Zero();
  Matrix3 pi_b = Matrix3::Zero();
  Eigen::Matrix<Complex, 9, 1> pi;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t k1 = r1.begin + i;
    const Complex ai = a[b1.row_point(k1)];
    gamma_a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        static_cast<double>(p.first().grading[k1]) * ai;
    for (std::size_t j = 0; j < 3; ++j) {
      const Complex bj = b[b2.row_point(r2.begin + j)];
      pi(static_cast<Eigen::Index>(3 * i + j)) = ai * bj;
      if (i == 0) pi_b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = bj;
    }
  }

  // Restriction of D2 to the block, then the commutator with pi(a) (x) pi(b).
  const Matrix9 d2 = kron3(dense_block(p.first().dirac.matrix(), r1), Matrix3::Identity()) +
                     kron3(dense_block(p.first().grading.as_operator(), r1), dense_block(p.second().dirac.matrix(), r2));
  Matrix9 full;
  for (int r = 0; r < 9; ++r) {
    for (int s = 0; s < 9; ++s) full(r, s) = d2(r, s) * (pi(s) - pi(r));
  }
  const Matrix9 term1 = kron3(dense_block(f.commutator_a, r1), pi_b);
  const Matrix9 term2 = kron3(gamma_a, dense_block(f.commutator_b, r2));

  const Eigen::Matrix<Complex, 3, 2> f1 = limit_frame(b1, l);
  const Eigen::Matrix<Complex, 3, 2> f2 = limit_frame(b2, m);
  Eigen::Matrix<Complex, 9, 4> frame;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) frame.block<3, 2>(3 * i, 2 * j) = f1(i, j) * f2;
  }

  FrameProjection out;
  out.l = l;
  out.m = m;
  out.block = frame.adjoint() * full * frame;
  out.first_term = frame.adjoint() * term1 * frame;
  out.second_term = frame.adjoint() * term2 * frame;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      out.pauli[static_cast<std::size_t>(mu * 4 + nu)] = (kron2(pauli(mu), pauli(nu)) * out.block).trace() / 4.0;
    }
  }
  out.top_singular_value = spectral_norm(out.block);
  out.anticommutator_norm =
      spectral_norm(out.first_term * out.second_term + out.second_term * out.first_term);
  return out;
}

void require_circles(const ProductTriple& p) {
  if (p.first().basis->shape() != Shape::Circle || p.second().basis->shape() != Shape::Circle) {
    throw Error(ErrorCode::ShapeUnsupported, "the 2d limit frame needs two circle factors");
  }
}

void require_sizes(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b) {
  if (a.size() != p.first().basis->points() || b.size() != p.second().basis->points()) {
    throw Error(ErrorCode::DimensionMismatch, "algebra elements do not match the factor lattices");
  }
}

}  // namespace

ProductTriple::ProductTriple(Triple first, Triple second)
    : first_(std::move(first)),
      second_(std::move(second)),
      grading_(product_grading(first_.grading, second_.grading)),
      reality_(product_reality(first_.reality, second_.reality)) {
  const std::size_t d2 = second_.basis->dimension();
  dirac_ = kron(first_.dirac.matrix(), identity(d2)) +
           kron(first_.grading.as_operator(), second_.dirac.matrix());
  const std::size_t n2 = second_.basis->points();
  sites_.reserve(first_.basis->dimension() * d2);
  for (std::size_t r1 = 0; r1 < first_.basis->dimension(); ++r1) {
    for (std::size_t r2 = 0; r2 < d2; ++r2) {
      sites_.push_back(first_.basis->row_point(r1) * n2 + second_.basis->row_point(r2));
    }
  }
}

TripleView ProductTriple::view() const { return TripleView{dirac_, grading_, reality_, sites_, site_count()}; }

ProductTriple tensor_triple(Triple first, Triple second, std::uint64_t seed) {
  require_valid(first, seed, "first");
  require_valid(second, seed, "second");
  ProductTriple p(std::move(first), std::move(second));
  p.report_ = validate_axioms(p.view(), seed, kProductAxiomTolerance);
  if (!p.report_.all_pass()) {
    throw Error(ErrorCode::AxiomFailure,
                "product triple fails the axioms (max residual " + std::to_string(p.report_.max_residual()) + ")");
  }
  return p;
}

AlgebraElement tensor_element(const AlgebraElement& a, const AlgebraElement& b) {
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (std::size_t l = 0; l < a.size(); ++l) {
    for (std::size_t m = 0; m < b.size(); ++m) out.push_back(a[l] * b[m]);
  }
  return AlgebraElement(std::move(out));
}

SparseOperator product_commutator(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b) {
  require_sizes(p, a, b);
  const AlgebraElement ab = tensor_element(a, b);
  ComplexVector diag(static_cast<Eigen::Index>(p.dimension()));
  const auto sites = p.sites();
  for (std::size_t k = 0; k < sites.size(); ++k) diag[static_cast<Eigen::Index>(k)] = ab[sites[k]];
  return commutator_with_diagonal(p.dirac(), diag);
}

SparseOperator leibniz_expansion(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b) {
  require_sizes(p, a, b);
  const Triple& t1 = p.first();
  const Triple& t2 = p.second();
  const ComplexVector pi_a = represent_diagonal(a, *t1.basis);
  const ComplexVector pi_b = represent_diagonal(b, *t2.basis);
  const ComplexVector gamma_a = grading_diagonal(t1.grading).cwiseProduct(pi_a);
  return kron(commutator(t1.dirac, a), diagonal_operator(pi_b)) +
         kron(diagonal_operator(gamma_a), commutator(t2.dirac, b));
}

double leibniz_residual(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b) {
  return max_abs(SparseOperator(product_commutator(p, a, b) - leibniz_expansion(p, a, b)));
}

FrameProjection project_block_2d(const ProductTriple& p, const AlgebraElement& a, const AlgebraElement& b,
                                 std::size_t l, std::size_t m) {
  require_circles(p);
  require_sizes(p, a, b);
  const FactorData f{commutator(p.first().dirac, a), commutator(p.second().dirac, b)};
  return project(p, a, b, f, l, m);
}

std::vector<FrameProjection> limit_frame_2d(const ProductTriple& p, const AlgebraElement& a,
                                            const AlgebraElement& b) {
  require_circles(p);
  require_sizes(p, a, b);
  const FactorData f{commutator(p.first().dirac, a), commutator(p.second().dirac, b)};
  std::vector<FrameProjection> out;
  out.reserve(a.size() * b.size());
  for (std::size_t l = 0; l < a.size(); ++l) {
    for (std::size_t m = 0; m < b.size(); ++m) out.push_back(project(p, a, b, f, l, m));
  }
  return out;
}

double continuum_top_singular_value(Complex a, Complex da, Complex b, Complex db, double weight) {
  const Complex x = da * b;
  const Complex y = a * db;
  const double squared = std::norm(x) + std::norm(y) + 2.0 * std::abs(std::imag(std::conj(x) * y));
  return weight * std::sqrt(squared);
}

namespace {

LimitStudyRow limit_row(const TestFunction& fx, const TestFunction& fy, std::size_t n,
                        Normalization normalization, std::uint64_t seed) {
  const ProductTriple p = tensor_triple(make_default_triple(Shape::Circle, n, normalization),
                                        make_default_triple(Shape::Circle, n, normalization), seed);
  const AlgebraElement a = fx.sample(Shape::Circle, n);
  const AlgebraElement b = fy.sample(Shape::Circle, n);
  const double weight = std::sqrt(2.0) * coupling_scale(normalization);

  LimitStudyRow row;
  row.n = n;
  row.spacing = lattice_spacing(Shape::Circle, n);
  row.max_singular_value_error = -1.0;
  for (const FrameProjection& f : limit_frame_2d(p, a, b)) {
    const double x = lattice_coordinate(Shape::Circle, n, f.l);
    const double y = lattice_coordinate(Shape::Circle, n, f.m);
    const double reference =
        continuum_top_singular_value(fx.value(x), fx.derivative(x), fy.value(y), fy.derivative(y), weight);
    const double error = std::abs(f.top_singular_value - reference);
    row.max_anticommutator = std::max(row.max_anticommutator, f.anticommutator_norm);
    if (error > row.max_singular_value_error) {
      row.max_singular_value_error = error;
      row.top_singular_value = f.top_singular_value;
      row.reference = reference;
    }
  }
  return row;
}

}  // namespace

LimitStudy limit_study_2d(const TestFunction& fx, const TestFunction& fy, std::span<const std::size_t> sizes,
                          Normalization normalization, std::uint64_t seed) {
  if (!fx.has_derivative() || !fy.has_derivative()) {
    throw Error(ErrorCode::InvalidArgument, "the limit study needs functions with known derivatives");
  }
  std::vector<std::size_t> ns(sizes.begin(), sizes.end());
  std::sort(ns.begin(), ns.end());
  for (std::size_t n : ns) {
    if (is_degenerate(Shape::Circle, n)) {
      throw Error(ErrorCode::DegenerateSize, "circle n=" + std::to_string(n) + " has det(q) = 0");
    }
  }
  std::vector<std::future<LimitStudyRow>> jobs;
  for (std::size_t n : ns) {
    jobs.push_back(std::async(std::launch::async, limit_row, std::cref(fx), std::cref(fy), n, normalization, seed));
  }
  LimitStudy study;
  std::vector<double> spacings, anticommutators, sv_errors;
  for (auto& job : jobs) {
    study.rows.push_back(job.get());
    spacings.push_back(study.rows.back().spacing);
    anticommutators.push_back(study.rows.back().max_anticommutator);
    sv_errors.push_back(study.rows.back().max_singular_value_error);
  }
  study.anticommutator_order = fit_order(spacings, anticommutators);
  study.singular_value_order = fit_order(spacings, sv_errors);
  return study;
}

}  // namespace fintriple
