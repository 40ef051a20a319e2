#include <doctest.h>

#include "spectra/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace spectra;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "spectra-theta");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("spectra_cli_" + name);
  std::ofstream(p) << content;
  return p;
}

} // namespace

TEST_CASE("tables match the golden files byte for byte") {
  const std::filesystem::path golden = GOLDEN_DIR;
  for (const auto& [cmd, file] : {std::pair{"theta-table", "theta_table.csv"},
                                  std::pair{"median-table", "median_table.csv"},
                                  std::pair{"equipoint-table", "equipoint_table.csv"}}) {
    CAPTURE(cmd);
    const auto r = run({cmd});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == slurp(golden / file));
  }
}

TEST_CASE("theta table layout") {
  const auto one = run({"theta-table", "--d-max", "1"});
  CHECK(one.out == "d,theta_minus,theta,theta_plus,theta_plusplus\n1,,1,,\n");
  const auto four = run({"theta-table", "--d-max", "4"});
  CHECK(four.out.find("\n2,,1.5708,,\n") != std::string::npos);
  CHECK(four.out.find("\n3,1.73205,1.73482,1.77064,1.88562\n") != std::string::npos);
  CHECK(four.out.find("\n4,,2,,\n") != std::string::npos);
  CHECK(run({"theta-table", "--d-max", "0"}).code == cli::kExitDomain);
}

TEST_CASE("JSON output parses with full precision") {
  const auto r = run({"theta-table", "--d-max", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 4);
  CHECK(std::fabs(j[1]["theta"].get<double>() - 1.5707963267948966) < 1e-13);
  CHECK(j[1]["theta_minus"].is_null());
  CHECK(j[2]["theta_plus"].get<double>() > j[2]["theta"].get<double>());
  const auto e = nlohmann::json::parse(run({"equipoint-table", "--format", "json"}).out);
  CHECK(e[4]["equipoint"].get<double>() == 0.5);
}

TEST_CASE("output is reproducible and can go to a file") {
  const auto a = run({"verify", "oracle", "--samples", "20000", "--format", "json"});
  const auto b = run({"verify", "oracle", "--samples", "20000", "--format", "json"});
  CHECK(a.out == b.out);
  const auto path = std::filesystem::temp_directory_path() / "spectra_cli_out.csv";
  CHECK(run({"median-table", "--out", path.string()}).code == 0);
  CHECK(slurp(path) == run({"median-table"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("verify sweeps") {
  CHECK(run({"verify", "simmons", "--d-max", "200"}).code == cli::kExitOk);
  CHECK(run({"verify", "bounds", "--d-max", "12"}).code == cli::kExitOk);
  CHECK(run({"verify", "monotone", "--d-max", "10", "--grid-step", "0.5"}).code == cli::kExitOk);
  CHECK(run({"verify", "dilation", "--samples", "50"}).code == cli::kExitOk);
  CHECK(run({"verify", "conjecture", "--d-max", "6"}).code == cli::kExitOk);
  // an impossible tolerance turns the equalities at s = t into reported violations
  const auto strict = run({"verify", "simmons", "--d-max", "6", "--tol", "-1e-3"});
  CHECK(strict.code == cli::kExitViolation);
  CHECK(strict.err.find("violation simmons_upper: s=") != std::string::npos);
  CHECK(run({"verify", "nonsense"}).code == cli::kExitDomain);
}

TEST_CASE("pencil commands") {
  const auto pencil = temp_file("pencil.json", R"({"nu":2,"g":2,"coeffs":[[1,0,0,-1],[0,0,0,0]]})");
  const auto tuple = temp_file("tuple.json", R"({"nu":1,"g":2,"coeffs":[[0.5],[0.25]]})");
  const auto m = run({"membership", "--pencil", pencil.string(), "--tuple", tuple.string()});
  CHECK(m.code == 0);
  CHECK(m.out == "nu,g,n,lambda_min,member\n2,2,1,0.5,true\n");
  const auto c = run({"cube-test", "--pencil", pencil.string(), "--trials", "20"});
  CHECK(c.code == 0);
  const auto disc = temp_file("disc.json", R"({"nu":2,"g":2,"coeffs":[[1,0,0,-1],[0,1,1,0]]})");
  CHECK(run({"cube-test", "--pencil", disc.string()}).code == cli::kExitDomain);
  CHECK(run({"membership", "--pencil", "/nonexistent", "--tuple", tuple.string()}).code == cli::kExitDomain);
  const auto broken = temp_file("broken.json", "{not json");
  CHECK(run({"membership", "--pencil", broken.string(), "--tuple", tuple.string()}).code == cli::kExitDomain);
  for (const auto& p : {pencil, tuple, disc, broken}) std::filesystem::remove(p);
}

TEST_CASE("witness") {
  const auto r = run({"witness", "--d", "2", "--cells", "16", "--samples", "200", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pencil"]["g"] == 16);
  CHECK(j["tuple"]["nu"] == 2);
  CHECK(j["lambda_max"].get<double>() > 1.0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kExitDomain);
  CHECK(run({"bogus"}).code == cli::kExitDomain);
  CHECK(run({"theta-table", "--format", "xml"}).code == cli::kExitDomain);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("the executable wires through") {
  const std::string cmd = std::string(SPECTRA_THETA_EXE) + " equipoint-table --format csv";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[256];
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  CHECK(pclose(pipe) == 0);
  CHECK(out == slurp(std::filesystem::path(GOLDEN_DIR) / "equipoint_table.csv"));
  FILE* bad = popen((std::string(SPECTRA_THETA_EXE) + " verify simmons --d-max 4 --tol -1 2>/dev/null").c_str(), "r");
  REQUIRE(bad != nullptr);
  while (fgets(buf, sizeof buf, bad)) {
  }
  const int status = pclose(bad);
  CHECK(WEXITSTATUS(status) == cli::kExitViolation);
}
