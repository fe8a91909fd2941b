#pragma once

// Command-line front end. parse_args turns argv into a RunConfig, run executes
// it and returns the process exit code:
//   0  success, all checks passed
//   1  an axiom or internal check failed
//   2  usage error
//   3  I/O error

#include "fintriple/dirac.hpp"
#include "fintriple/qmatrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fintriple::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

inline constexpr const char* kSeedVariable = "FINTRIPLE_SEED";

enum class Format { Text, Json, Csv };

struct RunConfig {
  std::string command;
  Shape shape = Shape::Circle;
  std::size_t n = 0;
  std::vector<std::size_t> n_list;
  std::size_t n_max = 0;
  std::optional<std::size_t> det_seq;
  std::string fn = "sin";
  std::string fn_x = "exp";
  std::string fn_y = "exp";
  double k = 1.0;
  double kx = 1.0;
  double ky = 2.0;
  Normalization normalization = Normalization::Sqrt2Corrected;
  Format format = Format::Text;
  std::string output_path;
  std::string couplings_path;
  std::optional<std::size_t> block;
  bool check_leibniz = false;
  std::vector<std::size_t> limit_study;
  double s = 1.0;
  std::size_t cutoff = 0;
  std::uint64_t seed = kDefaultSeed;
};

/// Bad command line. `exit_code` is 0 when help was requested.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, int exit_code = kExitUsage)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

/// `args` excludes the program name. The seed comes from --seed, else
/// FINTRIPLE_SEED, else kDefaultSeed.
RunConfig parse_args(const std::vector<std::string>& args);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with usage errors reported on `err`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fintriple::cli
