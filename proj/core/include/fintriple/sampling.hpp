#pragma once

#include "fintriple/qmatrix.hpp"
#include "fintriple/triple.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fintriple {

enum class FunctionKind { Sin, Cos, PlaneWave, Linear, Constant, Samples };

/// Lattice test function. Built-ins use wavenumber k: sin(kx), cos(kx),
/// exp(ikx), kx and the constant 1. Sample files carry no derivative.
class TestFunction {
 public:
  /// "sin", "cos", "exp", "linear", "const" or "file:PATH".
  static TestFunction parse(std::string_view text, double k = 1.0);
  static TestFunction builtin(FunctionKind kind, double k = 1.0);
  static TestFunction from_samples(std::vector<Complex> samples, std::string label = "samples");

  FunctionKind kind() const noexcept { return kind_; }
  double wavenumber() const noexcept { return k_; }
  std::string name() const;
  bool has_derivative() const noexcept { return kind_ != FunctionKind::Samples; }

  Complex value(double x) const;
  Complex derivative(double x) const;

  /// a_l = a(x_l) on the standard lattice; sample files must have n entries.
  AlgebraElement sample(Shape shape, std::size_t n) const;

 private:
  TestFunction(FunctionKind kind, double k) : kind_(kind), k_(k) {}

  FunctionKind kind_;
  double k_;
  std::vector<Complex> samples_;
  std::string label_;
};

/// One complex value per line as "re,im" (or just "re"); blank lines and
/// lines starting with '#' are skipped. Throws Error{Io} on read failure.
std::vector<Complex> load_samples(const std::filesystem::path& path);

}  // namespace fintriple
