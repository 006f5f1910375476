// Runs the command-line binary and checks exit codes and golden outputs.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = EPSILON_CLI_PATH;
const fs::path kSamples = EPSILON_SAMPLES_DIR;
const fs::path kGolden = EPSILON_GOLDEN_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::string& args, const std::string& stdin_text = {}) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / ("epsilon_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string tag = std::to_string(counter++);
  fs::path in = dir / ("in" + tag), out = dir / ("out" + tag), err = dir / ("err" + tag);
  std::ofstream(in) << stdin_text;
  std::string cmd = kCli + " " + args + " <" + in.string() + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string sample(const char* name) { return (kSamples / name).string(); }

TEST(Cli, TranslateGolden) {
  CliRun r = run("translate " + sample("exists.fml") + " --print-rank");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(kGolden / "translate.txt"));
  CliRun single = run("translate -", "ex x. x = S(0)\n");
  EXPECT_EQ(single.out, "(eps x. x = S(0)) = S(0)\n");
}

TEST(Cli, TranslateParseError) {
  CliRun r = run("translate -", "ex x. = 0\n");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("at 7"), std::string::npos) << r.err;
}

TEST(Cli, Solve) {
  CliRun r = run("--trace solve " + sample("demo.problem"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "eps x. x = S(0) := 1\n");
  EXPECT_EQ(r.err, "1\teps x. x = S(0)\t0 -> 1\t-\n");
  CliRun stuck = run("--trace solve " + sample("two_step.problem") + " --max-steps 1");
  EXPECT_EQ(stuck.code, 3);
  EXPECT_NE(stuck.err.find("0 -> 1"), std::string::npos);
  EXPECT_EQ(run("solve " + sample("false_axiom.problem")).code, 4);
}

TEST(Cli, ExtractAndCheck) {
  CliRun r = run("extract " + sample("sigma1.prf") + " --eps-term 'eps x. x = S(S(0))'");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "witness: 2");
  EXPECT_EQ(run("extract " + sample("bad.prf") + " --eps-term 'eps x. x = S(0)'").code, 5);
  EXPECT_EQ(run("extract " + sample("sigma1.prf")).code, 64);
  EXPECT_EQ(run("check " + sample("sigma1.prf")).out, "accepted\n");
  CliRun bad = run("check " + sample("bad.prf"));
  EXPECT_EQ(bad.code, 5);
  EXPECT_EQ(bad.out, "rejected 2 forward-reference: cites line 3\n");
  EXPECT_EQ(run("check " + sample("pi2_plus.prf")).code, 0);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("goedel").code, 64);
  EXPECT_EQ(run("goedel build-star --form quadstar").code, 64);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, GoedelRoundTrip) {
  CliRun enc = run("goedel encode " + sample("terms.fml"));
  ASSERT_EQ(enc.code, 0) << enc.err;
  CliRun dec = run("goedel decode", enc.out);
  ASSERT_EQ(dec.code, 0) << dec.err;
  EXPECT_EQ(dec.out, "0 = S(0)\nall x. ex y. lt(x, y) = S(0)\n(eps x. x = S(S(0))) = S(S(0))\n");
  CliRun proof = run("goedel encode --as proof " + sample("sigma1.prf"));
  EXPECT_EQ(run("goedel decode", proof.out).out, slurp(kSamples / "sigma1.prf"));
  EXPECT_EQ(run("goedel decode", "12345\n").code, 2);
}

TEST(Cli, BuildStarAndInstances) {
  CliRun star = run("goedel build-star --form triplestar");
  EXPECT_EQ(star.code, 0);
  EXPECT_EQ(star.out, slurp(kGolden / "triplestar.txt"));
  CliRun rows = run("goedel check-instances --range 100");
  EXPECT_EQ(rows.code, 0) << rows.err;
  EXPECT_EQ(rows.out, slurp(kGolden / "instances_100.tsv"));
  EXPECT_EQ(rows.err, "101 rows, 0 anomalies\n");
}

TEST(Cli, CustomSignature) {
  fs::path sig = fs::temp_directory_path() / "epsilon_cli_test_sig.sig";
  std::ofstream(sig) << "double/1: double(0) = 0 ; double(S(y)) = S(S(double(y)))\n";
  CliRun r = run("--sig " + sig.string() + " translate -", "ex x. double(x) = 4\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "double(eps x. double(x) = S(S(S(S(0))))) = S(S(S(S(0))))\n");
  EXPECT_EQ(run("--sig " + sig.string() + " translate -", "ex x. plus(x, x) = 4\n").code, 2);
  std::ofstream(sig) << "broken/1: broken(x) = nope(x)\n";
  EXPECT_EQ(run("--sig " + sig.string() + " translate -", "0 = 0\n").code, 2);
}

}  // namespace
