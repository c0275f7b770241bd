#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = charvar::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify") {
  const auto r = run({"classify", "0", "0", "0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kappa"] == "-2");
  CHECK(j["component"] == "Origin");
  CHECK(j["mode"] == "exact");
  const auto f = nlohmann::json::parse(run({"classify", "3", "3", "4", "--mode", "float"}).out);
  CHECK(f["kappa"] == -4.0);
  CHECK(f["component"].get<std::string>().rfind("TeichOctant", 0) == 0);
  const auto neg = run({"classify", "-3", "-3", "-3"});
  CHECK(neg.code == 0);
  CHECK(nlohmann::json::parse(neg.out)["kappa"] == "52");
}

TEST_CASE("reduce") {
  const auto r = run({"reduce", "3", "24", "9"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["steps"] == 2);
  CHECK(j["verdict"] == "NonHyperbolicCoordinate");
  const auto bad = run({"reduce", "0", "0", "0"});
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("tracepoly") {
  const auto r = run({"tracepoly", "Y X^-1", "--at", "1/2,3,2"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "x*y - z\n-1/2\n");
  CHECK(run({"tracepoly", "X Q"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"classify", "1", "2"}).code == 1);
  CHECK(run({"orbit", "--steps", "many"}).code == 1);
  CHECK(run({"render", "--t", "1", "--format", "gif"}).code == 1);
  CHECK(run({"render", "--t", "1", "--plane", "yz", "--overlay"}).code == 1);
  CHECK(run({"sample", "--t", "0", "--mode", "exact"}).code == 1);
  CHECK(run({"orbit", "--t", "1", "--mode", "exact"}).code == 1);
  CHECK(run({"verify", "--suite", "nothing"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("orbit output") {
  const auto r = run({"orbit", "--t", "0", "--steps", "5", "--seed", "3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["step"] == n);
    CHECK(std::abs(j["kappa"].get<double>()) < 1e-9);
    ++n;
  }
  CHECK(n == 6);
  const auto csv = run({"orbit", "--t", "0", "--steps", "3", "--format", "csv", "--workers", "2"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("chain,step,x,y,z,kappa,word\n", 0) == 0);
  const auto exact = run({"orbit", "--mode", "exact", "--start", "1,1,1", "--steps", "4"});
  REQUIRE(exact.code == 0);
  CHECK(exact.out.find("\"kappa\":\"0\"") != std::string::npos);
}

TEST_CASE("every subcommand is deterministic") {
  const std::vector<std::vector<std::string>> cmds{
      {"classify", "1/2", "-3", "7"},
      {"reduce", "5", "7", "40"},
      {"tracepoly", "X^2 Y^-1 X Y"},
      {"orbit", "--t", "1", "--steps", "200", "--workers", "2"},
      {"sample", "--t", "0.5", "--n", "300", "--workers", "3"},
      {"render", "--t", "19", "--overlay", "--width", "48", "--height", "48"},
      {"render", "--t", "0", "--kind", "orbit", "--steps", "300", "--width", "48", "--height", "48", "--format", "ppm"},
      {"render", "--t", "0", "--kind", "samples", "--n", "300", "--width", "48", "--height", "48"},
      {"verify", "--suite", "group"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    CHECK_MESSAGE(a.code == 0, c[0]);
    CHECK_MESSAGE(a.out == b.out, c[0]);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("seed from the environment") {
  const std::vector<std::string> cmd{"sample", "--t", "0", "--n", "50"};
  ::setenv("CHARVAR_SEED", "7", 1);
  const auto a = run(cmd);
  ::unsetenv("CHARVAR_SEED");
  const auto b = run({"sample", "--t", "0", "--n", "50", "--seed", "7"});
  const auto c = run(cmd);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("verify exit codes") {
  const auto r = run({"verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("dynamics:") != std::string::npos);
  CHECK(r.out.find(" 0 failures") != std::string::npos);
}
