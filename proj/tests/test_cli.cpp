#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::path(CSISTP_TEST_WORKDIR) / "cli";

int run(const std::string& args, const std::string& out_name = "stdout.txt") {
  fs::create_directories(kWork);
  const std::string cmd = std::string("\"") + CSISTP_CLI_PATH + "\" " + args + " > \"" +
                          (kWork / out_name).string() + "\" 2> \"" + (kWork / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string work(const std::string& name) { return (kWork / name).string(); }

std::string fixture(const std::string& name) { return std::string(CSISTP_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve the five-point fixture") {
  for (const char* solver : {"exact", "kmb"}) {
    CHECK(run("solve " + fixture("five_point.csistp.json") + " --solver " + solver + " --out " + work("five.sol.json") +
              " --dot " + work("five.dot")) == 0);
    const auto sol = slurp(kWork / "five.sol.json");
    CHECK(sol.find("\"total_cost\": 4.0") != std::string::npos);
    CHECK(slurp(kWork / "five.dot").rfind("graph csistp {", 0) == 0);
    CHECK(run("verify " + fixture("five_point.csistp.json") + " " + work("five.sol.json")) == 0);
    CHECK(slurp(kWork / "stdout.txt").find("valid: yes") != std::string::npos);
  }
}

TEST_CASE("error exit codes") {
  CHECK(run("solve " + work("missing.json")) == 2);
  {
    std::ofstream(kWork / "garbage.json") << "{ not json";
  }
  CHECK(run("solve " + work("garbage.json")) == 2);
  {
    std::ofstream(kWork / "infeasible.json")
        << R"({"n": 3, "costs": [[0], [1, 0], [1, 1, 0]], "clusters": [[0, 1]], "required_internal": [[0]]})";
  }
  CHECK(run("solve " + work("infeasible.json")) == 1);
  CHECK(run("gen -n 4 -k 4 --steiner-fraction 0.5") == 1);
  CHECK(slurp(kWork / "stderr.txt").find("cannot form 4 nonempty clusters") != std::string::npos);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("verify flags broken solutions") {
  const auto inst = fixture("five_point.csistp.json");
  {
    std::ofstream(kWork / "dropped.sol.json") << R"({"edges": [[0, 1], [2, 3]], "vertices": [0, 1, 2, 3]})";
  }
  CHECK(run("verify " + inst + " " + work("dropped.sol.json")) == 1);
  CHECK(slurp(kWork / "stdout.txt").find("not a tree") != std::string::npos);

  {
    std::ofstream(kWork / "leafy.json")
        << R"({"n": 4, "costs": [[0], [1, 0], [2, 1, 0], [1, 1, 1, 0]], "clusters": [[0, 1, 2]], "required_internal": [[0]]})";
    std::ofstream(kWork / "leafy.sol.json") << R"({"edges": [[0, 1], [1, 2]]})";
  }
  CHECK(run("verify " + work("leafy.json") + " " + work("leafy.sol.json") + " --mode strict") == 1);
  CHECK(slurp(kWork / "stdout.txt").find("leaf vertices: 0") != std::string::npos);
}

TEST_CASE("gen is byte-identical across runs and closes the loop") {
  for (const char* kind : {"euclidean", "random-metric"}) {
    const std::string args = std::string("gen --kind ") + kind + " -n 9 -k 3 --seed 17 --internal-fraction 0.4";
    CHECK(run(args + " --out " + work("a.json")) == 0);
    CHECK(run(args + " --out " + work("b.json")) == 0);
    CHECK(slurp(kWork / "a.json") == slurp(kWork / "b.json"));
    CHECK(run("solve " + work("a.json") + " --out " + work("a.sol.json")) == 0);
    CHECK(run("solve " + work("a.json") + " --out " + work("b.sol.json")) == 0);
    CHECK(slurp(kWork / "a.sol.json") == slurp(kWork / "b.sol.json"));
    CHECK(run("verify " + work("a.json") + " " + work("a.sol.json") + " --mode strict") == 0);
  }
}

TEST_CASE("bench is reproducible") {
  CHECK(run("bench " + fixture("small_bench.json") + " --out " + work("a.csv")) == 0);
  CHECK(run("bench " + fixture("small_bench.json") + " --serial --out " + work("b.csv")) == 0);
  CHECK(slurp(kWork / "a.csv") == slurp(kWork / "b.csv"));
  CHECK(slurp(kWork / "stderr.txt").find("exact") != std::string::npos);
  {
    std::ofstream(kWork / "big.json") << R"({"cells": [{"n": 12, "k": 2}]})";
  }
  CHECK(run("bench " + work("big.json")) == 1);
  CHECK(slurp(kWork / "stderr.txt").find("oracle limit exceeded") != std::string::npos);
}

}  // TEST_SUITE
