#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pit/cli.hpp"

namespace pit {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& body) {
    fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

TEST_F(CliTest, CheckVerdictsAndExitCodes) {
  std::string zero = file("zero.txt", "sps { (x1)(x2); (-1*x2)(x1) }\n");
  std::string nonzero = file("nonzero.txt", "sps { (x1)(x2); (x3)(x4) }\n");
  CliRun z = run({"check", zero, "--mode", "brute"});
  EXPECT_EQ(z.code, kExitZero);
  EXPECT_TRUE(contains(z.out, "verdict: Zero"));
  CliRun n = run({"check", nonzero, "--mode", "brute"});
  EXPECT_EQ(n.code, kExitNonZero);
  EXPECT_TRUE(contains(n.out, "verdict: NonZero"));
  CliRun r = run({"check", nonzero, "--mode", "rand", "--seed", "3"});
  EXPECT_EQ(r.code, kExitNonZero);
  EXPECT_TRUE(contains(r.out, "ProbablyNonZero"));
  EXPECT_TRUE(contains(r.out, "witness"));
  CliRun rz = run({"check", zero, "--mode", "rand"});
  EXPECT_EQ(rz.code, kExitZero);
  EXPECT_TRUE(contains(rz.out, "ZeroAtAllSamples"));
}

TEST_F(CliTest, RandomModeReplays) {
  std::string f = file("f.txt", "formula (* (+ x1 3) x2)\n");
  CliRun a = run({"--seed", "42", "check", f, "--mode", "rand"});
  CliRun b = run({"--seed", "42", "check", f, "--mode", "rand"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
}

TEST_F(CliTest, RecordsFormat) {
  std::string zero = file("zero.txt", "sps { (x1)(x2); (-1*x2)(x1) }\n");
  CliRun z = run({"--format", "records", "check", zero, "--mode", "brute"});
  EXPECT_EQ(z.out, "verdict=zero mode=brute seed=- witness=- splits=0\n");
}

TEST_F(CliTest, CommutativeMode) {
  std::string alg = file("dual.txt",
                         "field 101\nalgebra k=2\nidentity 1 0\n"
                         "mult 1 1 : 1 0\nmult 1 2 : 0 1\nmult 2 1 : 0 1\nmult 2 2 : 0 0\n"
                         "term 0 1 | 0 0\nterm 0 1 | 0 0\n");
  CliRun det = run({"check", alg, "--mode", "commutative"});
  EXPECT_EQ(det.code, kExitZero);
  EXPECT_TRUE(contains(det.out, "splits"));
  CliRun a = run({"check", alg});
  EXPECT_EQ(a.code, kExitZero);
}

TEST_F(CliTest, MalformedInputIsAnError) {
  std::string bad = file("bad.txt", "sps { (x1 }\n");
  CliRun r = run({"check", bad});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({"check", path("missing.txt")}).code, kExitError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run({"--field", "4", "check", bad}).code, kExitError);
}

TEST_F(CliTest, TransformStats) {
  std::string c = file("c.txt", "sps { (x1)(x2); (x3)(x4) }\n");
  CliRun low = run({"lower", c});
  EXPECT_EQ(low.code, 0);
  EXPECT_TRUE(contains(low.out, "len=5"));
  EXPECT_TRUE(contains(low.out, "bound_ok=yes"));

  std::string e = file("e.txt", "formula (* x1 x2)\n");
  CliRun boc = run({"boc", e});
  EXPECT_EQ(boc.code, 0);
  EXPECT_TRUE(contains(boc.out, "len=4"));

  CliRun local = run({"reduce-local", c});
  EXPECT_EQ(local.code, 0);
  EXPECT_TRUE(contains(local.out, "dim=4"));
  EXPECT_TRUE(contains(local.out, "dim_ok=yes"));
}

TEST_F(CliTest, LowerThenAbpPipeline) {
  std::string c = file("c.txt", "sps { (x1 + 1)(x2); (x3)(x1) }\n");
  std::string lowered = path("low.txt");
  ASSERT_EQ(run({"lower", c, "-o", lowered}).code, 0);
  ASSERT_TRUE(fs::exists(lowered));
  std::string abp = path("abp.txt");
  CliRun a = run({"abp", lowered, "-o", abp});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_TRUE(contains(a.out, "planar"));
  CliRun direct = run({"abp", c});
  EXPECT_EQ(direct.code, 0);
  CliRun chk = run({"check", abp, "--mode", "brute"});
  EXPECT_EQ(chk.code, kExitNonZero);
}

TEST_F(CliTest, ValidateAlgebra) {
  std::string ok = file("ok.txt",
                        "algebra k=2\nidentity 1 0\n"
                        "mult 1 1 : 1 0\nmult 1 2 : 0 1\nmult 2 1 : 0 1\nmult 2 2 : 0 0\n");
  CliRun r = run({"validate-algebra", ok});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "ok k=2"));
  EXPECT_TRUE(contains(r.out, "commutative=yes"));

  std::string u2 = file("u2.txt",
                        "algebra k=3\nidentity 1 0 1\n"
                        "mult 1 1 : 1 0 0\nmult 1 2 : 0 1 0\nmult 1 3 : 0 0 0\n"
                        "mult 2 1 : 0 0 0\nmult 2 2 : 0 0 0\nmult 2 3 : 0 1 0\n"
                        "mult 3 1 : 0 0 0\nmult 3 2 : 0 0 0\nmult 3 3 : 0 0 1\n");
  CliRun u = run({"validate-algebra", u2});
  EXPECT_EQ(u.code, 0) << u.out << u.err;
  EXPECT_TRUE(contains(u.out, "commutative=no"));

  std::string bad = file("bad.txt",
                         "algebra k=3\nidentity 1 0 0\n"
                         "mult 1 1 : 1 0 0\nmult 1 2 : 0 1 0\nmult 1 3 : 0 0 1\n"
                         "mult 2 1 : 0 1 0\nmult 2 2 : 0 0 1\nmult 2 3 : 0 1 0\n"
                         "mult 3 1 : 0 0 1\nmult 3 2 : 0 0 0\nmult 3 3 : 0 0 0\n");
  CliRun b = run({"validate-algebra", bad});
  EXPECT_EQ(b.code, 1);
  EXPECT_TRUE(contains(b.out, "NotAssociative"));
}

TEST_F(CliTest, Robustness) {
  CliRun r = run({"--field", "2", "robustness", "--poly", "x1*x2 + x3*x4 + x5*x6"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "violations=0"));
  CliRun v = run({"--field", "2", "robustness", "--poly", "x1*x2"});
  EXPECT_TRUE(contains(v.out, "violations=16"));
  CliRun big = run({"robustness", "--poly", "x1*x2 + x3*x4 + x5*x6"});
  EXPECT_EQ(big.code, kExitError);
}

TEST_F(CliTest, SuiteSmall) {
  std::string report = path("report.txt");
  CliRun r = run({"--seed", "5", "suite", "--sizes", "small", "-o", report});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "failures=0"));
  EXPECT_FALSE(slurp(report).empty());
  CliRun again = run({"--seed", "5", "suite", "--sizes", "small"});
  EXPECT_EQ(again.out, r.out);
  CliRun fault = run({"suite", "--sizes", "small", "--criteria", "4,6", "--inject-fault"});
  EXPECT_EQ(fault.code, 1);
  EXPECT_TRUE(contains(fault.out, "FAIL"));
}

TEST_F(CliTest, RepeatedOutputIsByteIdentical) {
  std::string c = file("c.txt", "sps { (x1 + 2)(x2)(x3); (x3)(x1)(x2 + 1); (x4)(x4)(x4) }\n");
  for (const char* cmd : {"lower", "abp", "reduce-local"}) {
    CliRun a = run({cmd, c});
    CliRun b = run({cmd, c});
    EXPECT_EQ(a.out, b.out) << cmd;
  }
}

}  // namespace
}  // namespace pit
