#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "advdiff/cli.hpp"
#include "helpers.hpp"

using namespace advdiff;
using advdiff::testing::rel_close;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult result;
  result.code = run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

TEST_CASE("solve writes one row per node with the exact column") {
  const CliResult result =
      run({"solve", "--v", "10", "--k", "1", "--f", "1", "--n", "10",
           "--formulation", "all", "--format", "csv"});
  REQUIRE(result.code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] ==
        "x,u_galerkin,u_artificial,u_weighted,u_exact,err_galerkin,"
        "err_artificial,err_weighted");
  const std::vector<std::string> mid = split_csv(lines[6]);
  REQUIRE(mid.size() == 8);
  CHECK(rel_close(std::stod(mid[0]), 0.5, 1e-15));
  CHECK(rel_close(std::stod(mid[4]), 0.04933071490757151, 1e-12));
  // The stabilized columns carry the exact values too.
  CHECK(rel_close(std::stod(mid[2]), 0.04933071490757151, 1e-9));
  CHECK(rel_close(std::stod(mid[3]), 0.04933071490757151, 1e-9));
}

TEST_CASE("solve with zero velocity reproduces the parabolic profile") {
  const CliResult result = run({"solve", "--v", "0", "--k", "1", "--f", "1",
                                "--n", "4", "--formulation", "galerkin"});
  REQUIRE(result.code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  REQUIRE(lines.size() == 6);
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> row = split_csv(lines[i]);
    const double x = std::stod(row[0]);
    CHECK(std::abs(std::stod(row[2]) - x * (1.0 - x) / 2.0) <= 1e-15);
  }
}

TEST_CASE("non-Dirichlet data drops the exact columns") {
  const CliResult result = run({"solve", "--v", "10", "--k", "1", "--bc-right",
                                "neumann:1", "--formulation", "weighted"});
  REQUIRE(result.code == 0);
  CHECK(lines_of(result.out)[0] == "x,u_weighted");
}

TEST_CASE("missing required flags name the flag and exit 2") {
  const CliResult result = run({"solve", "--v", "10"});
  CHECK(result.code == 2);
  CHECK(result.err.find("--k") != std::string::npos);
}

TEST_CASE("unknown formulation exits 2") {
  const CliResult result = run({"solve", "--v", "1", "--k", "1",
                                "--formulation", "upwind"});
  CHECK(result.code == 2);
  CHECK(result.err.find("upwind") != std::string::npos);
}

TEST_CASE("invalid problem data exits 2 with a one-line diagnostic") {
  const CliResult result = run({"solve", "--v", "1", "--k", "-1"});
  CHECK(result.code == 2);
  CHECK(result.err.find("NonPositiveDiffusivity") != std::string::npos);
  CHECK(lines_of(result.err).size() == 1);
}

TEST_CASE("sweep reports the stabilized formulations as exact") {
  const CliResult result = run({"sweep", "--ratios", "1,10,50,100",
                                "--formulation", "weighted"});
  REQUIRE(result.code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] ==
        "ratio,formulation,peclet,max_nodal_error,l2_error,asymmetry,"
        "condition");
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> row = split_csv(lines[i]);
    REQUIRE(row.size() == 7);
    CHECK(row[1] == "weighted");
    CHECK(std::stod(row[3]) <= 1e-10);   // max nodal error
    CHECK(std::stod(row[5]) <= 1e-12);   // asymmetry
  }
}

TEST_CASE("sweep shows the Galerkin pathology at ratio 100") {
  const CliResult result =
      run({"sweep", "--ratios", "100", "--formulation", "galerkin"});
  REQUIRE(result.code == 0);
  const std::vector<std::string> row = split_csv(lines_of(result.out)[1]);
  CHECK(std::stod(row[2]) == doctest::Approx(5.0));  // element Peclet
  CHECK(std::stod(row[3]) >= 1e-2);
}

TEST_CASE("sweep requires ratios") {
  const CliResult result = run({"sweep"});
  CHECK(result.code == 2);
  CHECK(result.err.find("--ratios") != std::string::npos);
}

TEST_CASE("stencil table") {
  SUBCASE("closed form matches the assembled rows") {
    const CliResult result = run({"stencil", "--v", "1", "--k", "0.02",
                                  "--n", "10"});
    REQUIRE(result.code == 0);
    const std::vector<std::string> lines = lines_of(result.out);
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == "row,c_left,c_center,c_right");
    const std::vector<std::string> closed = split_csv(lines[5]);
    REQUIRE(closed[0] == "weighted_closed");
    CHECK(rel_close(std::stod(closed[1]), -10.067836549063042, 1e-11));
    CHECK(rel_close(std::stod(closed[2]), 10.135673098126085, 1e-11));
    CHECK(rel_close(std::stod(closed[3]), -0.06783654906304231, 1e-10));
    const std::vector<std::string> assembled = split_csv(lines[6]);
    REQUIRE(assembled[0] == "weighted_assembled");
    for (int c = 1; c <= 3; ++c) {
      CHECK(rel_close(std::stod(assembled[c]), std::stod(closed[c]), 1e-11));
    }
  }

  SUBCASE("zero velocity collapses to the diffusion stencil") {
    const CliResult result = run({"stencil", "--v", "0", "--k", "1",
                                  "--n", "10"});
    REQUIRE(result.code == 0);
    const std::vector<std::string> lines = lines_of(result.out);
    const std::vector<std::string> galerkin = split_csv(lines[1]);
    for (size_t i = 3; i <= 5; i += 2) {
      const std::vector<std::string> other = split_csv(lines[i]);
      for (int c = 1; c <= 3; ++c) {
        CHECK(other[c] == galerkin[c]);
      }
    }
  }

  SUBCASE("at Pe = 1 the Galerkin downstream coefficient vanishes") {
    const CliResult result = run({"stencil", "--v", "1", "--k", "0.05",
                                  "--n", "10"});
    REQUIRE(result.code == 0);
    const std::vector<std::string> galerkin =
        split_csv(lines_of(result.out)[1]);
    CHECK(std::stod(galerkin[3]) == 0.0);
  }
}

TEST_CASE("identical configs produce byte-identical output") {
  const std::vector<std::string> args = {"solve", "--v", "37.5", "--k",
                                         "0.31", "--n", "16"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> sweep_args = {"sweep", "--ratios", "3,30"};
  CHECK(run(sweep_args).out == run(sweep_args).out);
}

TEST_CASE("verify emits the JSON report and exits 0") {
  const CliResult result = run({"verify"});
  CHECK(result.code == 0);
  const nlohmann::json root = nlohmann::json::parse(result.out);
  CHECK(root["version"] == kVersion);
  CHECK(root["config"]["command"] == "verify");
  REQUIRE(root["checks"].is_array());
  CHECK(root["checks"].size() > 20);
  for (const auto& check : root["checks"]) {
    REQUIRE(check.contains("check"));
    REQUIRE(check.contains("value"));
    REQUIRE(check.contains("tolerance"));
    REQUIRE(check.contains("pass"));
    CHECK(check["pass"] == true);
  }
}

TEST_CASE("verify can emit CSV rows") {
  const CliResult result = run({"verify", "--format", "csv"});
  CHECK(result.code == 0);
  const std::vector<std::string> lines = lines_of(result.out);
  CHECK(lines[0] == "check,value,tolerance,pass");
  CHECK(lines.size() > 20);
}

TEST_CASE("output lands in the requested file") {
  const std::string path = "/tmp/advdiff_cli_test_output.csv";
  std::remove(path.c_str());
  const CliResult direct = run({"solve", "--v", "2", "--k", "1"});
  const CliResult filed =
      run({"solve", "--v", "2", "--k", "1", "--output", path});
  REQUIRE(filed.code == 0);
  CHECK(filed.out.empty());
  std::ifstream file(path, std::ios::binary);
  std::stringstream content;
  content << file.rdbuf();
  CHECK(content.str() == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("config file supplies defaults, flags override") {
  const std::string path = "/tmp/advdiff_cli_test_config.ini";
  {
    std::ofstream file(path);
    file << "[solve]\n";
    file << "v = 10\n";
    file << "k = 1\n";
    file << "n = 10\n";
  }
  const CliResult from_config = run({"--config", path, "solve"});
  REQUIRE(from_config.code == 0);
  const CliResult from_flags =
      run({"solve", "--v", "10", "--k", "1", "--n", "10"});
  CHECK(from_config.out == from_flags.out);

  const CliResult overridden = run({"--config", path, "solve", "--k", "2"});
  REQUIRE(overridden.code == 0);
  const CliResult expected =
      run({"solve", "--v", "10", "--k", "2", "--n", "10"});
  CHECK(overridden.out == expected.out);
  std::remove(path.c_str());
}

TEST_CASE("help exits zero") {
  const CliResult result = run({"--help"});
  CHECK(result.code == 0);
  CHECK(result.out.find("solve") != std::string::npos);
}
