#include "cli.hpp"

#include "fintriple/analysis.hpp"
#include "fintriple/calculus.hpp"
#include "fintriple/error.hpp"
#include "fintriple/lattice.hpp"
#include "fintriple/product.hpp"
#include "fintriple/sampling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

namespace fintriple::cli {

using Json = nlohmann::ordered_json;

namespace {

// Leibniz is exact algebra; the product triple itself is checked at
// kProductAxiomTolerance.
constexpr double kLeibnizTolerance = 1e-12;

std::uint64_t parse_seed(std::string_view text, std::string_view origin) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError(std::string(origin) + ": not an unsigned integer: '" + std::string(text) + "'");
  }
  return value;
}

Shape to_shape(const std::string& text) {
  if (auto s = parse_shape(text)) return *s;
  throw UsageError("--shape: expected circle or segment, got '" + text + "'");
}

Normalization to_normalization(const std::string& text) {
  if (auto n = parse_normalization(text)) return *n;
  throw UsageError("--normalization: expected sqrt2 or unit, got '" + text + "'");
}

// Adding 0.0 folds -0.0 into 0.0.
Json complex_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

Json vector_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// Determinants here stay tiny, but keep the full value if one ever does not.
Json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return Json(v.convert_to<long long>());
  }
  return Json(v.str());
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::vector<std::string> degeneracy_warnings(Shape shape, std::size_t n) {
  if (!is_degenerate(shape, n)) return {};
  return {"DegenerateSize: det(q) = 0 for " + std::string(to_string(shape)) + " n=" + std::to_string(n)};
}

// --- qmatrix ---------------------------------------------------------------

int run_qmatrix(const RunConfig& c, std::ostream& out) {
  const IntersectionMatrix q = build_q(c.shape, c.n);
  const BigInt det = determinant(q);
  const std::size_t kernel = kernel_dimension(q);
  const std::size_t n = q.size();

  std::vector<BigInt> sequence;
  if (c.det_seq) sequence = det_sequence(c.shape, *c.det_seq);
  const std::size_t first = min_size(c.shape);

  switch (c.format) {
    case Format::Json: {
      Json j;
      j["shape"] = to_string(c.shape);
      j["n"] = n;
      Json rows = Json::array();
      for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < n; ++k) row.push_back(q(i, k));
        rows.push_back(row);
      }
      j["entries"] = rows;
      j["det"] = bigint_json(det);
      j["kernel_dim"] = kernel;
      if (c.det_seq) {
        Json seq = Json::array();
        for (std::size_t i = 0; i < sequence.size(); ++i) {
          seq.push_back(Json{{"n", first + i}, {"det", bigint_json(sequence[i])}});
        }
        j["det_sequence"] = seq;
      }
      print_json(out, j);
      break;
    }
    case Format::Csv:
      if (c.det_seq) {
        out << "n,det\n";
        for (std::size_t i = 0; i < sequence.size(); ++i) out << first + i << ',' << sequence[i] << '\n';
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t k = 0; k < n; ++k) out << (k ? "," : "") << q(i, k);
          out << '\n';
        }
      }
      break;
    case Format::Text:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) out << std::setw(3) << q(i, k);
        out << '\n';
      }
      out << "det = " << det << ", kernel_dim = " << kernel << '\n';
      if (c.det_seq) {
        out << "det sequence:";
        for (const BigInt& d : sequence) out << ' ' << d;
        out << '\n';
      }
      break;
  }
  return kExitOk;
}

// --- validate --------------------------------------------------------------

// {"base": "default"|"none", "overrides": [{"from": [i, j], "to": [k, l],
// "value": [re, im]}]}. Values are raw matrix entries; [0, 0] removes one.
CouplingMap load_couplings(const std::string& path, const TripleBasis& basis, double spacing,
                           Normalization normalization) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open coupling file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("coupling file '" + path + "': " + e.what());
  }
  try {
    const std::string base = j.value("base", "default");
    CouplingMap m;
    if (base == "default") {
      m = default_couplings(basis, spacing, normalization);
    } else if (base != "none") {
      throw UsageError("coupling file '" + path + "': base must be 'default' or 'none'");
    }
    for (const Json& o : j.value("overrides", Json::array())) {
      const auto from = o.at("from").get<std::array<std::size_t, 2>>();
      const auto to = o.at("to").get<std::array<std::size_t, 2>>();
      const auto value = o.at("value").get<std::array<double, 2>>();
      const CouplingKey key{{from[0], from[1]}, {to[0], to[1]}};
      const Complex z(value[0], value[1]);
      if (z == Complex(0.0)) {
        m.erase(key);
      } else {
        m[key] = z;
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw UsageError("coupling file '" + path + "': " + e.what());
  }
}

int run_validate(const RunConfig& c, std::ostream& out) {
  const double dx = lattice_spacing(c.shape, c.n);
  Triple triple = [&] {
    if (c.couplings_path.empty()) return make_default_triple(c.shape, c.n, c.normalization);
    auto basis = std::make_shared<const TripleBasis>(build_basis(build_q(c.shape, c.n)));
    CouplingMap m = load_couplings(c.couplings_path, *basis, dx, c.normalization);
    return make_triple(assemble_dirac_unchecked(basis, std::move(m), dx, c.normalization));
  }();
  const AxiomReport report = validate_axioms(triple, c.seed);

  Json j;
  j["shape"] = to_string(c.shape);
  j["n"] = c.n;
  j["normalization"] = to_string(c.normalization);
  j["couplings"] = c.couplings_path.empty() ? Json("default") : Json(c.couplings_path);
  j["seed"] = c.seed;
  j["tolerance"] = report.tolerance;
  Json checks = Json::array();
  for (const AxiomCheck& check : report.checks) {
    checks.push_back(Json{{"check_name", check.name}, {"max_residual", check.max_residual}, {"pass", check.pass}});
  }
  j["checks"] = checks;
  j["pass"] = report.all_pass();
  j["warnings"] = degeneracy_warnings(c.shape, c.n);
  print_json(out, j);
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

// --- commutator ------------------------------------------------------------

std::string_view position_name(BlockPosition p) {
  switch (p) {
    case BlockPosition::Interior: return "interior";
    case BlockPosition::LeftBoundary: return "left_boundary";
    case BlockPosition::RightBoundary: return "right_boundary";
  }
  return "interior";
}

Json kernel_json(const BlockKernel& k) {
  switch (k.kind) {
    case BlockKernel::Kind::Vector: return vector_json(k.vector);
    case BlockKernel::Kind::Full: return "full";
    case BlockKernel::Kind::Trivial: return nullptr;
  }
  return nullptr;
}

int run_commutator(const RunConfig& c, std::ostream& out) {
  if (c.block && *c.block >= c.n) {
    throw UsageError("--block " + std::to_string(*c.block) + " out of range for n=" + std::to_string(c.n));
  }
  const TestFunction fn = TestFunction::parse(c.fn, c.k);
  const Triple t = make_default_triple(c.shape, c.n, c.normalization);
  const AlgebraElement a = fn.sample(c.shape, c.n);
  const SparseOperator comm = commutator(t.dirac, a);
  const double off_block = off_block_residual(comm, *t.basis);
  std::vector<CommutatorBlockSet> all = blocks(comm, t.dirac);
  if (c.block) all = {all[*c.block]};

  if (c.format == Format::Json) {
    Json j;
    j["shape"] = to_string(c.shape);
    j["n"] = c.n;
    j["fn"] = fn.name();
    j["normalization"] = to_string(c.normalization);
    j["off_block_residual"] = off_block;
    Json list = Json::array();
    for (const CommutatorBlockSet& b : all) {
      list.push_back(Json{{"l", b.point},
                          {"position", position_name(b.position)},
                          {"a_minus", complex_json(b.backward)},
                          {"a_plus", complex_json(b.forward)},
                          {"nu", b.nu},
                          {"kernel", kernel_json(b.kernel)}});
    }
    j["blocks"] = list;
    print_json(out, j);
  } else {
    out << fn.name() << " on " << to_string(c.shape) << " n=" << c.n << ", off-block residual " << off_block << '\n';
    out << std::setw(5) << "l" << std::setw(26) << "a_minus" << std::setw(26) << "a_plus" << std::setw(14) << "nu"
        << '\n';
    const auto fmt = [](Complex z) {
      std::ostringstream s;
      s << std::setprecision(6) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
      return s.str();
    };
    for (const CommutatorBlockSet& b : all) {
      out << std::setw(5) << b.point << std::setw(26) << fmt(b.backward) << std::setw(26) << fmt(b.forward)
          << std::setw(14) << std::setprecision(8) << b.nu << '\n';
    }
  }
  return off_block < kAxiomTolerance ? kExitOk : kExitCheckFailed;
}

// --- product ---------------------------------------------------------------

int run_product(const RunConfig& c, std::ostream& out) {
  const TestFunction fx = TestFunction::parse(c.fn_x, c.kx);
  const TestFunction fy = TestFunction::parse(c.fn_y, c.ky);
  const ProductTriple p = tensor_triple(make_default_triple(Shape::Circle, c.n, c.normalization),
                                        make_default_triple(Shape::Circle, c.n, c.normalization), c.seed);
  const AlgebraElement a = fx.sample(Shape::Circle, c.n);
  const AlgebraElement b = fy.sample(Shape::Circle, c.n);
  bool ok = p.report().all_pass();

  Json j;
  j["n"] = c.n;
  j["fn_x"] = fx.name();
  j["fn_y"] = fy.name();
  j["normalization"] = to_string(c.normalization);
  j["seed"] = c.seed;
  j["product_axiom_residual"] = p.report().max_residual();
  if (c.check_leibniz) {
    const double r = leibniz_residual(p, a, b);
    ok = ok && r < kLeibnizTolerance;
    j["leibniz_residual"] = r;
  } else {
    j["leibniz_residual"] = nullptr;
  }

  const double weight = std::sqrt(2.0) * coupling_scale(c.normalization);
  const double dx = lattice_spacing(Shape::Circle, c.n);
  double anticomm = 0.0;
  std::size_t skipped = 0;
  Json table = Json::array();
  for (std::size_t l = 0; l < c.n; ++l) {
    for (std::size_t m = 0; m < c.n; ++m) {
      FrameProjection f;
      try {
        f = project_block_2d(p, a, b, l, m);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateBlock) throw;
        ++skipped;
        continue;
      }
      anticomm = std::max(anticomm, f.anticommutator_norm);
      const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(f.block);
      Json sv = Json::array();
      for (Eigen::Index i = 0; i < 4; ++i) sv.push_back(svd.singularValues()[i]);
      Json row{{"l", l}, {"m", m}, {"singular_values", sv}};
      if (fx.has_derivative() && fy.has_derivative()) {
        const double x = lattice_coordinate(Shape::Circle, c.n, l);
        const double y = lattice_coordinate(Shape::Circle, c.n, m);
        row["reference"] = continuum_top_singular_value(fx.value(x), fx.derivative(x), fy.value(y),
                                                        fy.derivative(y), weight);
      }
      row["anticomm_norm"] = f.anticommutator_norm;
      table.push_back(row);
    }
  }
  j["dx"] = dx;
  j["anticomm_norm"] = anticomm;
  j["degenerate_blocks_skipped"] = skipped;
  j["block_sv_table"] = table;

  if (!c.limit_study.empty()) {
    const LimitStudy s = limit_study_2d(fx, fy, c.limit_study, c.normalization, c.seed);
    Json rows = Json::array();
    for (const LimitStudyRow& r : s.rows) {
      rows.push_back(Json{{"n", r.n},
                          {"dx", r.spacing},
                          {"max_anticommutator", r.max_anticommutator},
                          {"max_singular_value_error", r.max_singular_value_error},
                          {"top_singular_value", r.top_singular_value},
                          {"reference", r.reference}});
    }
    j["limit_study"] = Json{{"rows", rows},
                            {"anticommutator_order", optional_json(s.anticommutator_order)},
                            {"singular_value_order", optional_json(s.singular_value_order)}};
  }
  print_json(out, j);
  return ok ? kExitOk : kExitCheckFailed;
}

// --- converge --------------------------------------------------------------

int run_converge(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TestFunction fn = TestFunction::parse(c.fn, c.k);
  if (!fn.has_derivative()) throw UsageError("converge needs a built-in function with a known derivative");

  std::vector<std::size_t> sizes;
  for (std::size_t n : c.n_list) {
    if (n < min_size(c.shape)) throw UsageError("--n-list: size " + std::to_string(n) + " is too small");
    if (is_degenerate(c.shape, n)) {
      err << "warning: skipping degenerate size n=" << n << '\n';
      continue;
    }
    sizes.push_back(n);
  }
  if (sizes.empty()) throw UsageError("--n-list: no non-degenerate sizes left");

  // Open the output first so an unwritable path fails before any work.
  std::ofstream csv;
  if (!c.output_path.empty()) {
    csv.open(c.output_path);
    if (!csv) throw Error(ErrorCode::Io, "cannot write '" + c.output_path + "'");
  }

  const ConvergenceStudy study = converge_1d(fn, c.shape, sizes, c.normalization);
  if (csv.is_open()) {
    write_csv(csv, study.records);
    csv.flush();
    if (!csv) throw Error(ErrorCode::Io, "write to '" + c.output_path + "' failed");
  }
  if (c.format == Format::Csv && c.output_path.empty()) {
    write_csv(out, study.records);
    return kExitOk;
  }

  Json j;
  j["shape"] = to_string(c.shape);
  j["fn"] = fn.name();
  j["normalization"] = to_string(c.normalization);
  j["metric"] = kNuErrorMetric;
  Json records = Json::array();
  for (const ConvergenceRecord& r : study.records) {
    records.push_back(Json{{"n", r.n}, {"dx", r.spacing}, {"value", r.value}, {"reference", r.reference},
                           {"error", r.error}});
  }
  j["records"] = records;
  j["order"] = optional_json(study.order);
  if (!c.output_path.empty()) j["csv"] = c.output_path;
  print_json(out, j);
  return kExitOk;
}

// --- zeta ------------------------------------------------------------------

int run_zeta(const RunConfig& c, std::ostream& out) {
  const Triple t = make_default_triple(c.shape, c.n, c.normalization);
  const SpectrumRecord eigen = spectrum(t.dirac);
  const std::size_t cutoff = c.cutoff == 0 ? eigen.eigenvalues.size() : c.cutoff;
  const ZetaResult z = zeta_action(eigen, c.s, cutoff);

  Json j;
  j["shape"] = to_string(c.shape);
  j["n"] = c.n;
  j["normalization"] = to_string(c.normalization);
  j["exploratory"] = true;
  j["s"] = z.s;
  j["cutoff"] = cutoff;
  j["terms"] = z.terms;
  j["value"] = z.value;
  j["kernel_dim"] = eigen.kernel_dim;
  j["spectral_symmetry_residual"] = spectral_symmetry_residual(eigen);
  j["partial_sums"] = z.partial_sums;
  j["log_normalized"] = z.log_normalized;
  j["warnings"] = degeneracy_warnings(c.shape, c.n);
  print_json(out, j);
  return kExitOk;
}

// --- survey ----------------------------------------------------------------

int run_survey(const RunConfig& c, std::ostream& out) {
  const std::vector<SurveyRow> rows = degeneracy_survey(c.shape, c.n_max);
  if (c.format == Format::Csv) {
    out << "n,det,kernel_dim\n";
    for (const SurveyRow& r : rows) out << r.n << ',' << r.det << ',' << r.kernel_dim << '\n';
    return kExitOk;
  }
  Json j;
  j["shape"] = to_string(c.shape);
  j["n_max"] = c.n_max;
  Json list = Json::array();
  for (const SurveyRow& r : rows) {
    list.push_back(Json{{"n", r.n}, {"det", bigint_json(r.det)}, {"kernel_dim", r.kernel_dim}});
  }
  j["rows"] = list;
  print_json(out, j);
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return kExitIo;
    case ErrorCode::AxiomFailure:
    case ErrorCode::NotBlockDiagonal:
    case ErrorCode::AllZeroSpectrum: return kExitCheckFailed;
    default: return kExitUsage;
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Finite real spectral triples on the discrete circle and segment", "fintriple"};
  app.require_subcommand(1);

  std::string shape = "circle";
  std::string normalization = "sqrt2";
  std::optional<std::string> seed;
  bool json = false;
  bool csv = false;

  const auto add_shape = [&](CLI::App* sub) { sub->add_option("--shape", shape, "circle or segment"); };
  const auto add_norm = [&](CLI::App* sub) {
    sub->add_option("--normalization", normalization, "coupling normalization: sqrt2 or unit");
  };
  const auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "seed for pseudorandom algebra elements");
  };

  CLI::App* qmatrix = app.add_subcommand("qmatrix", "intersection matrix, determinant and kernel");
  add_shape(qmatrix);
  qmatrix->add_option("--n", c.n, "number of points")->required();
  qmatrix->add_option("--det-seq", c.det_seq, "also list det(q) up to this size");
  auto* qjson = qmatrix->add_flag("--json", json, "JSON output");
  qmatrix->add_flag("--csv", csv, "CSV output")->excludes(qjson);

  CLI::App* validate = app.add_subcommand("validate", "check the five axioms");
  add_shape(validate);
  validate->add_option("--n", c.n, "number of points")->required();
  add_norm(validate);
  validate->add_option("--couplings", c.couplings_path, "JSON coupling fixture");
  add_seed(validate);

  CLI::App* comm = app.add_subcommand("commutator", "blocks of [D, pi(a)]");
  add_shape(comm);
  comm->add_option("--n", c.n, "number of points")->required();
  comm->add_option("--fn", c.fn, "sin, cos, exp, linear, const or file:PATH");
  comm->add_option("--k", c.k, "wavenumber");
  comm->add_option("--block", c.block, "only this column block");
  add_norm(comm);
  comm->add_flag("--json", json, "JSON output");

  CLI::App* product = app.add_subcommand("product", "circle (x) circle product triple");
  product->add_option("--n", c.n, "points per factor")->required();
  product->add_option("--fn-x", c.fn_x, "function on the first factor");
  product->add_option("--fn-y", c.fn_y, "function on the second factor");
  product->add_option("--kx", c.kx, "wavenumber on the first factor");
  product->add_option("--ky", c.ky, "wavenumber on the second factor");
  product->add_flag("--check-leibniz", c.check_leibniz, "compare both commutator routes");
  product->add_option("--limit-study", c.limit_study, "sizes for the 2D limit study")->delimiter(',');
  add_norm(product);
  add_seed(product);

  CLI::App* converge = app.add_subcommand("converge", "1D continuum limit of nu");
  add_shape(converge);
  converge->add_option("--fn", c.fn, "sin, cos, exp, linear or const");
  converge->add_option("--k", c.k, "wavenumber");
  converge->add_option("--n-list", c.n_list, "comma separated sizes")->delimiter(',')->required();
  converge->add_option("--csv", c.output_path, "write records to this CSV file");
  add_norm(converge);

  CLI::App* zeta = app.add_subcommand("zeta", "exploratory zeta sum over the Dirac spectrum");
  add_shape(zeta);
  zeta->add_option("--n", c.n, "number of points")->required();
  zeta->add_option("--s", c.s, "exponent");
  zeta->add_option("--cutoff", c.cutoff, "number of terms (default all)");
  add_norm(zeta);

  CLI::App* survey = app.add_subcommand("survey", "det(q) and kernel dimension for every size");
  add_shape(survey);
  survey->add_option("--n-max", c.n_max, "largest size")->required();
  survey->add_flag("--csv", csv, "CSV output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), kExitOk);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  c.command = app.get_subcommands().front()->get_name();
  c.shape = to_shape(shape);
  c.normalization = to_normalization(normalization);
  c.format = json ? Format::Json : csv ? Format::Csv : Format::Text;

  if (seed) {
    c.seed = parse_seed(*seed, "--seed");
  } else if (const char* env = std::getenv(kSeedVariable); env != nullptr && *env != '\0') {
    c.seed = parse_seed(env, kSeedVariable);
  }

  if (c.command == "zeta" && !(c.s > 0.0)) throw UsageError("--s must be positive");
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "qmatrix") return run_qmatrix(c, out);
    if (c.command == "validate") return run_validate(c, out);
    if (c.command == "commutator") return run_commutator(c, out);
    if (c.command == "product") return run_product(c, out);
    if (c.command == "converge") return run_converge(c, out, err);
    if (c.command == "zeta") return run_zeta(c, out);
    if (c.command == "survey") return run_survey(c, out);
    err << "error: unknown command '" << c.command << "'\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const UsageError& e) {
    (e.exit_code() == kExitOk ? out : err) << e.what() << (e.exit_code() == kExitOk ? "" : "\n");
    return e.exit_code();
  }
  return run(config, out, err);
}

}  // namespace fintriple::cli
