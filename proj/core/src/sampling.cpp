#include "fintriple/sampling.hpp"

#include "fintriple/error.hpp"
#include "fintriple/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fintriple {

TestFunction TestFunction::builtin(FunctionKind kind, double k) {
  if (kind == FunctionKind::Samples) {
    throw Error(ErrorCode::InvalidArgument, "sample functions are built with from_samples");
  }
  return TestFunction(kind, k);
}

TestFunction TestFunction::from_samples(std::vector<Complex> samples, std::string label) {
  TestFunction f(FunctionKind::Samples, 0.0);
  f.samples_ = std::move(samples);
  f.label_ = std::move(label);
  return f;
}

TestFunction TestFunction::parse(std::string_view text, double k) {
  if (text == "sin") return builtin(FunctionKind::Sin, k);
  if (text == "cos") return builtin(FunctionKind::Cos, k);
  if (text == "exp") return builtin(FunctionKind::PlaneWave, k);
  if (text == "linear") return builtin(FunctionKind::Linear, k);
  if (text == "const") return builtin(FunctionKind::Constant, k);
  constexpr std::string_view prefix = "file:";
  if (text.starts_with(prefix)) {
    const std::string path(text.substr(prefix.size()));
    return from_samples(load_samples(path), "file:" + path);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown function '" + std::string(text) + "'");
}

std::string TestFunction::name() const {
  switch (kind_) {
    case FunctionKind::Sin: return "sin";
    case FunctionKind::Cos: return "cos";
    case FunctionKind::PlaneWave: return "exp";
    case FunctionKind::Linear: return "linear";
    case FunctionKind::Constant: return "const";
    case FunctionKind::Samples: return label_;
  }
  return "?";
}

Complex TestFunction::value(double x) const {
  switch (kind_) {
    case FunctionKind::Sin: return std::sin(k_ * x);
    case FunctionKind::Cos: return std::cos(k_ * x);
    case FunctionKind::PlaneWave: return std::exp(kI * (k_ * x));
    case FunctionKind::Linear: return k_ * x;
    case FunctionKind::Constant: return 1.0;
    case FunctionKind::Samples: break;
  }
  throw Error(ErrorCode::InvalidArgument, "sample files have no continuum values");
}

Complex TestFunction::derivative(double x) const {
  switch (kind_) {
    case FunctionKind::Sin: return k_ * std::cos(k_ * x);
    case FunctionKind::Cos: return -k_ * std::sin(k_ * x);
    case FunctionKind::PlaneWave: return kI * k_ * std::exp(kI * (k_ * x));
    case FunctionKind::Linear: return k_;
    case FunctionKind::Constant: return 0.0;
    case FunctionKind::Samples: break;
  }
  throw Error(ErrorCode::InvalidArgument, "sample files have no derivative");
}

AlgebraElement TestFunction::sample(Shape shape, std::size_t n) const {
  if (kind_ == FunctionKind::Samples) {
    if (samples_.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, label_ + " has " + std::to_string(samples_.size()) +
                                                    " samples, lattice has " + std::to_string(n));
    }
    return AlgebraElement(samples_);
  }
  std::vector<Complex> out(n);
  for (std::size_t l = 0; l < n; ++l) out[l] = value(lattice_coordinate(shape, n, l));
  return AlgebraElement(std::move(out));
}

std::vector<Complex> load_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<Complex> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re)) {
      throw Error(ErrorCode::InvalidArgument, path.string() + ":" + std::to_string(line_no) + ": bad sample");
    }
    if (!(fields >> im)) im = 0.0;
    out.emplace_back(re, im);
  }
  return out;
}

}  // namespace fintriple
