#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fintriple;
using namespace fintriple::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFixtures = FINTRIPLE_FIXTURE_DIR;

}  // namespace

TEST_CASE("parse_args: validate") {
  const RunConfig c = parse_args({"validate", "--shape", "circle", "--n", "5"});
  CHECK(c.command == "validate");
  CHECK(c.shape == Shape::Circle);
  CHECK(c.n == 5);
  CHECK(c.normalization == Normalization::Sqrt2Corrected);
}

TEST_CASE("parse_args: lists, formats and enums") {
  const RunConfig c = parse_args({"converge", "--shape", "segment", "--fn", "cos", "--n-list", "8,16,32", "--csv",
                                  "out.csv", "--normalization", "unit"});
  CHECK(c.n_list == std::vector<std::size_t>{8, 16, 32});
  CHECK(c.output_path == "out.csv");
  CHECK(c.shape == Shape::Segment);
  CHECK(c.normalization == Normalization::Unit);

  CHECK(parse_args({"qmatrix", "--n", "4", "--csv"}).format == Format::Csv);
  CHECK(parse_args({"qmatrix", "--n", "4", "--json"}).format == Format::Json);
  CHECK(parse_args({"product", "--n", "6", "--limit-study", "8,16"}).limit_study == std::vector<std::size_t>{8, 16});
}

TEST_CASE("parse_args: usage errors") {
  const auto usage = [](const std::vector<std::string>& args) {
    try {
      parse_args(args);
    } catch (const UsageError& e) {
      return e.exit_code();
    }
    return -1;
  };
  CHECK(usage({"validate", "--shape", "circle"}) == kExitUsage);
  CHECK(usage({"validate", "--shape", "torus", "--n", "5"}) == kExitUsage);
  CHECK(usage({"validate", "--n", "5", "--normalization", "half"}) == kExitUsage);
  CHECK(usage({"frobnicate"}) == kExitUsage);
  CHECK(usage({}) == kExitUsage);
  CHECK(usage({"qmatrix", "--n", "4", "--csv", "--json"}) == kExitUsage);
  CHECK(usage({"zeta", "--n", "5", "--s", "0"}) == kExitUsage);
  CHECK(usage({"--help"}) == kExitOk);
}

TEST_CASE("seed precedence: flag, environment, default") {
  ::unsetenv(kSeedVariable);
  CHECK(parse_args({"validate", "--n", "5"}).seed == kDefaultSeed);
  ::setenv(kSeedVariable, "42", 1);
  CHECK(parse_args({"validate", "--n", "5"}).seed == 42);
  CHECK(parse_args({"validate", "--n", "5", "--seed", "7"}).seed == 7);
  ::setenv(kSeedVariable, "not-a-number", 1);
  CHECK_THROWS_AS(parse_args({"validate", "--n", "5"}), UsageError);
  ::unsetenv(kSeedVariable);
}

TEST_CASE("validate exit codes") {
  const Result ok = invoke({"validate", "--shape", "circle", "--n", "5"});
  CHECK(ok.code == kExitOk);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["checks"].size() == 5);
  CHECK(j["checks"][0]["check_name"] == "self_adjoint");
  CHECK(j["pass"] == true);

  const Result broken =
      invoke({"validate", "--shape", "circle", "--n", "3", "--couplings", kFixtures + "/broken_symmetry.json"});
  CHECK(broken.code == kExitCheckFailed);
  const auto b = nlohmann::json::parse(broken.out);
  CHECK(b["pass"] == false);
  CHECK(b["checks"][2]["check_name"] == "reality_commutes");
  CHECK(b["checks"][2]["pass"] == false);

  CHECK(invoke({"validate", "--n", "3", "--couplings", "/nonexistent/fixture.json"}).code == kExitIo);
}

TEST_CASE("validate on a degenerate size warns and proceeds") {
  const Result r = invoke({"validate", "--shape", "circle", "--n", "6"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["warnings"].size() == 1);
  CHECK(j["warnings"][0].get<std::string>().find("DegenerateSize") == 0);
}

TEST_CASE("qmatrix JSON fields") {
  const Result r = invoke({"qmatrix", "--shape", "circle", "--n", "6", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["shape"] == "circle");
  CHECK(j["n"] == 6);
  CHECK(j["entries"][0] == nlohmann::json::array({-1, 1, 0, 0, 0, 1}));
  CHECK(j["det"] == 0);
  CHECK(j["kernel_dim"] == 2);
  CHECK(invoke({"qmatrix", "--shape", "circle", "--n", "2"}).code == kExitUsage);
}

TEST_CASE("commutator from a sample file matches the built-in") {
  const Result file = invoke({"commutator", "--n", "8", "--fn", "file:" + kFixtures + "/sin_circle_8.txt", "--json"});
  const Result builtin = invoke({"commutator", "--n", "8", "--fn", "sin", "--json"});
  REQUIRE(file.code == kExitOk);
  const auto a = nlohmann::json::parse(file.out)["blocks"];
  const auto b = nlohmann::json::parse(builtin.out)["blocks"];
  REQUIRE(a.size() == 8);
  for (std::size_t l = 0; l < 8; ++l) CHECK(a[l]["nu"].get<double>() == doctest::Approx(b[l]["nu"].get<double>()));
  CHECK(invoke({"commutator", "--n", "9", "--fn", "file:" + kFixtures + "/sin_circle_8.txt"}).code == kExitUsage);
  CHECK(invoke({"commutator", "--n", "8", "--fn", "file:/nonexistent"}).code == kExitIo);
  CHECK(invoke({"commutator", "--n", "8", "--block", "8"}).code == kExitUsage);
}

TEST_CASE("converge: CSV file, degenerate sizes skipped, unwritable path") {
  const auto path = std::filesystem::temp_directory_path() / "fintriple_test_converge.csv";
  const Result r =
      invoke({"converge", "--shape", "circle", "--fn", "sin", "--n-list", "8,12,16,32", "--csv", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.find("n=12") != std::string::npos);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["records"].size() == 3);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,dx,metric,value,reference,error");
  std::filesystem::remove(path);

  CHECK(invoke({"converge", "--fn", "sin", "--n-list", "8,16", "--csv", "/nonexistent/dir/out.csv"}).code == kExitIo);
  CHECK(invoke({"converge", "--fn", "sin", "--n-list", "6,12"}).code == kExitUsage);
}

TEST_CASE("survey, zeta and product run") {
  const Result s = invoke({"survey", "--shape", "segment", "--n-max", "8", "--csv"});
  CHECK(s.out == "n,det,kernel_dim\n2,0,1\n3,1,0\n4,-1,0\n5,0,1\n6,1,0\n7,-1,0\n8,0,1\n");

  const Result z = invoke({"zeta", "--shape", "circle", "--n", "13", "--s", "1.0", "--cutoff", "10"});
  REQUIRE(z.code == kExitOk);
  CHECK(nlohmann::json::parse(z.out)["terms"] == 10);

  const Result p = invoke({"product", "--n", "5", "--fn-x", "exp", "--fn-y", "sin", "--check-leibniz"});
  REQUIRE(p.code == kExitOk);
  const auto j = nlohmann::json::parse(p.out);
  CHECK(j["leibniz_residual"].get<double>() < 1e-12);
  CHECK(j["block_sv_table"].size() == 25);
}

TEST_CASE("identical configurations give byte-identical JSON") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"validate", "--shape", "segment", "--n", "7", "--seed", "99"},
        std::vector<std::string>{"product", "--n", "4", "--check-leibniz", "--limit-study", "8,16"},
        std::vector<std::string>{"converge", "--fn", "cos", "--n-list", "8,16,32"},
        std::vector<std::string>{"commutator", "--shape", "segment", "--n", "7", "--fn", "exp", "--json"}}) {
    const Result first = invoke(args);
    const Result second = invoke(args);
    CHECK(first.code == kExitOk);
    CHECK(first.out == second.out);
  }
}
