#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

const char* kCli = WEYLCOVER_CLI_PATH;

int run(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
#if defined(_WIN32)
  return status;
#else
  return WEXITSTATUS(status);
#endif
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("list prints the catalog") {
  std::string out = tmp_path("list.json");
  REQUIRE(run(std::string(kCli) + " list --out " + out) == 0);
  std::string text = slurp(out);
  CHECK(text.find("lin-sym-O(4)") != std::string::npos);
  CHECK(text.find("pgrp-GL2R-rotation") != std::string::npos);
  CHECK(text.find("harness_eligible") != std::string::npos);
}

TEST_CASE("unknown instance is a usage error") {
  CHECK(run(std::string(kCli) + " verify --instance nosuch 2> /dev/null") == 2);
  CHECK(run(std::string(kCli) + " bogus-subcommand 2> /dev/null") == 2);
}

TEST_CASE("verify passes on a healthy instance") {
  std::string out = tmp_path("verify.json");
  REQUIRE(run(std::string(kCli) +
              " verify --instance lin-sym-O2 --probes 10 --seed 42 --no-timestamp --out " + out) ==
          0);
  std::string text = slurp(out);
  CHECK(text.find("\"pass\": true") != std::string::npos);
  CHECK(text.find("\"fiber_pass\": 10") != std::string::npos);
}

TEST_CASE("fiber on a seeded sphere point reports two sheets") {
  std::string out = tmp_path("fiber.json");
  REQUIRE(run(std::string(kCli) + " fiber --instance cpt-sphere --seed 7 --no-timestamp --out " +
              out) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"count\": 2") != std::string::npos);
  CHECK(text.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("fiber accepts a point file") {
  std::string point = tmp_path("point.json");
  {
    std::ofstream f(point);
    f << R"({"field":"real","rows":2,"cols":2,"data":[1.0,0.0,0.0,2.0]})";
  }
  std::string out = tmp_path("fiber_point.json");
  REQUIRE(run(std::string(kCli) + " fiber --instance lin-sym-O2 --point " + point +
              " --no-timestamp --out " + out) == 0);
  CHECK(slurp(out).find("\"count\": 2") != std::string::npos);
}

TEST_CASE("a non-regular point file is a numerical failure (exit 3)") {
  std::string point = tmp_path("degenerate.json");
  {
    std::ofstream f(point);
    f << R"({"field":"real","rows":2,"cols":2,"data":[1.0,0.0,0.0,1.0]})";
  }
  CHECK(run(std::string(kCli) + " fiber --instance lin-sym-O2 --point " + point +
            " 2> /dev/null") == 3);
}

TEST_CASE("malformed point JSON is a usage error") {
  std::string point = tmp_path("broken.json");
  {
    std::ofstream f(point);
    f << "{ not json";
  }
  CHECK(run(std::string(kCli) + " fiber --instance lin-sym-O2 --point " + point +
            " 2> /dev/null") == 2);
}

TEST_CASE("negative control: overridden degree fails with FiberDefect") {
  std::string out = tmp_path("corrupt.json");
  int code = run(std::string(kCli) +
                 " verify --instance lin-sym-O2 --probes 5 --seed 42 --expect-degree 3 "
                 "--no-timestamp --out " +
                 out);
  CHECK(code == 1);
  CHECK(slurp(out).find("FiberDefect") != std::string::npos);
}

TEST_CASE("integrate passes on the sphere") {
  std::string out = tmp_path("integrate.json");
  REQUIRE(run(std::string(kCli) +
              " integrate --instance cpt-sphere --samples 20000 --seed 3 --no-timestamp --out " +
              out) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"pass\": true") != std::string::npos);
  CHECK(text.find("x1sq") != std::string::npos);
}

TEST_CASE("density emits csv when asked") {
  std::string out = tmp_path("density.csv");
  REQUIRE(run(std::string(kCli) +
              " density --instance cpt-sphere --samples 30000 --bins 30 --seed 5 --format csv "
              "--out " +
              out) == 0);
  std::string text = slurp(out);
  CHECK(text.rfind("bin_left,bin_right,observed,expected", 0) == 0);
}

TEST_CASE("tolerance overrides parse and bad keys are usage errors") {
  CHECK(run(std::string(kCli) +
            " verify --instance cpt-sphere --probes 5 --tol structural=1e-6 --tol stat=5 "
            "> /dev/null") == 0);
  CHECK(run(std::string(kCli) + " verify --instance cpt-sphere --probes 5 --tol bogus=1 "
                                "2> /dev/null") == 2);
}

TEST_CASE("scalar and SIMD kernel paths give byte-identical reports") {
  std::string s1 = tmp_path("simd1.json"), s2 = tmp_path("simd2.json");
  std::string cmd = std::string(kCli) +
                    " integrate --instance lin-sym-O2 --samples 30000 --seed 21 --no-timestamp "
                    "--out ";
  REQUIRE(run(cmd + s1) == 0);
  REQUIRE(run("WEYLCOVER_SIMD=scalar " + cmd + s2) == 0);
  CHECK(slurp(s1) == slurp(s2));
}

TEST_CASE("reports are byte-identical across WEYLCOVER_THREADS") {
  std::string out1 = tmp_path("det1.json"), out2 = tmp_path("det2.json");
  std::string base = std::string(kCli) +
                     " verify --instance lin-sym-O2 --probes 10 --seed 11 --no-timestamp --out ";
  REQUIRE(run("WEYLCOVER_THREADS=1 " + base + out1) == 0);
  REQUIRE(run("WEYLCOVER_THREADS=2 " + base + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));

  std::string i1 = tmp_path("int1.json"), i2 = tmp_path("int2.json");
  std::string ibase = std::string(kCli) +
                      " integrate --instance grp-U2 --samples 20000 --seed 11 --no-timestamp --out ";
  REQUIRE(run("WEYLCOVER_THREADS=1 " + ibase + i1) == 0);
  REQUIRE(run("WEYLCOVER_THREADS=2 " + ibase + i2) == 0);
  CHECK(slurp(i1) == slurp(i2));
}
