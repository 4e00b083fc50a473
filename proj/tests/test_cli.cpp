#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "penny/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = penny::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("generate writes a packing") {
    const auto r = run({"generate", "--kind", "square", "--L", "64"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["centers"].size() == 129 * 129);
    CHECK(doc["radius"] == 0.5);
  }

  TEST_CASE("dim on a square window") {
    const std::string path = temp("penny_cli_sq64.json");
    REQUIRE(run({"generate", "--kind", "square", "--L", "64", "--out", path}).code == 0);
    const auto r = run({"dim", "--packing", path, "--k", "1", "--beta", "2", "--delta", "0.5", "--R", "12,16,24"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["estimate"] == 3);
    std::filesystem::remove(path);
  }

  TEST_CASE("mesh figure of the hex flower") {
    const std::string path = temp("penny_cli_hex.json");
    REQUIRE(run({"generate", "--kind", "triangular", "--L", "1", "--out", path}).code == 0);
    const auto r = run({"figure", "--packing", path, "--mesh"});
    REQUIRE(r.code == 0);
    CHECK(count(r.out, "<circle") == 7);
    CHECK(count(r.out, "<line") == 12);
    CHECK(count(r.out, "<polygon") == 6);
    CHECK(r.out.find("flipped") != std::string::npos);
    const auto plain = run({"figure", "--packing", path});
    CHECK(count(plain.out, "<polygon") == 0);
    std::filesystem::remove(path);
  }

  TEST_CASE("every command runs and repeats byte for byte") {
    const std::string path = temp("penny_cli_random.json");
    REQUIRE(run({"generate", "--kind", "random", "--L", "14", "--seed", "4", "--out", path}).code == 0);
    const std::vector<std::vector<std::string>> commands{
        {"graph"},
        {"faces"},
        {"triangulate"},
        {"triangulate", "--policy", "first-found"},
        {"dirichlet", "--radius", "3", "--data", "random", "--seed", "9"},
        {"mvi", "--r", "2", "--no-planar", "--probes", "10", "--modes", "3"},
        {"heat", "--steps", "20", "--init", "random"},
        {"heat", "--mode", "caloric", "--poly", "x", "--k", "1", "--radius", "3"},
        {"metrics", "--pairs", "100"},
        {"figure"}};
    for (auto args : commands) {
      CAPTURE(args[0]);
      args.push_back("--packing");
      args.push_back(path);
      const auto a = run(args), b = run(args);
      CHECK(a.code == 0);
      CHECK(a.err == "");
      CHECK(a.out == b.out);
      CHECK_FALSE(a.out.empty());
    }
    std::filesystem::remove(path);
  }

  TEST_CASE("exit codes and error objects") {
    const auto unknown = run({"graph", "--bogus"});
    CHECK(unknown.code == 1);
    CHECK(nlohmann::json::parse(unknown.err)["error"]["kind"] == "validation");
    CHECK(run({"generate", "--kind", "hexagonal"}).code == 1);
    CHECK(run({}).code == 1);

    const auto missing = run({"graph", "--packing", "/nonexistent/p.json"});
    CHECK(missing.code == 3);
    CHECK(nlohmann::json::parse(missing.err)["error"]["kind"] == "io");

    CHECK(run({"generate", "--out", "/nonexistent/dir/p.json"}).code == 3);

    const auto budget = run({"generate", "--kind", "random", "--keep", "0.5", "--dmax", "3", "--retries", "2"});
    CHECK(budget.code == 2);
    CHECK(nlohmann::json::parse(budget.err)["error"]["kind"] == "convergence");

    const std::string path = temp("penny_cli_small.json");
    REQUIRE(run({"generate", "--kind", "square", "--L", "5", "--out", path}).code == 0);
    const auto small = run({"dim", "--packing", path});
    CHECK(small.code == 1);
    std::filesystem::remove(path);
  }

  TEST_CASE("help succeeds") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("generate") != std::string::npos);
  }
}
