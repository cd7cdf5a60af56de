#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "csync/generators.hpp"
#include "csync/io.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "csync");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = csync::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const char* name) { return std::string(CSYNC_FIXTURE_DIR) + "/" + name; }

std::map<std::string, std::string> parse_machine(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  const std::regex shape("^[a-z_]+=[^\n]*$");
  while (std::getline(in, line)) {
    EXPECT_TRUE(std::regex_match(line, shape)) << line;
    const auto eq = line.find('=');
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace

TEST(Cli, SyncShortestCerny) {
  const Result r = run({"sync", fixture("cerny_4.aut"), "--shortest", "--machine"});
  EXPECT_EQ(r.code, 0);
  const auto kv = parse_machine(r.out);
  EXPECT_EQ(kv.at("answer"), "yes");
  EXPECT_EQ(kv.at("length"), "9");
  EXPECT_EQ(kv.at("witness"), "abbbabbba");
}

TEST(Cli, SyncPairCollapse) {
  const Result r = run({"sync", fixture("fig_commutative_nonsync.aut"), "--machine"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse_machine(r.out).at("answer"), "no");
}

TEST(Cli, HumanOutput) {
  const Result r = run({"sync", fixture("cerny_3.aut")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("answer: yes"), std::string::npos);
}

TEST(Cli, ConstrainedMethodsAgree) {
  for (const char* method : {"auto", "commutative", "oracle"}) {
    const Result r = run({"constrained", fixture("fig_commutative.aut"), "--regex", "a*b(a+b)*",
                          "--method", method, "--machine"});
    EXPECT_EQ(r.code, 0) << method << r.err;
    const auto kv = parse_machine(r.out);
    EXPECT_EQ(kv.at("answer"), "yes");
    EXPECT_EQ(kv.at("length"), "3");
  }
  const auto kv = parse_machine(
      run({"constrained", fixture("fig_commutative.aut"), "--regex", "a*b(a+b)*", "--machine"}).out);
  EXPECT_EQ(kv.at("method"), "commutative");
}

TEST(Cli, ConstrainedSimpleIdempotentParity) {
  const Result odd = run({"constrained", fixture("sink_cycle_7.aut"), "--regex", "b(a+bb)*",
                          "--method", "simple-idempotent", "--machine"});
  EXPECT_EQ(odd.code, 0);
  EXPECT_EQ(parse_machine(odd.out).at("answer"), "no");
  const Result even = run({"constrained", fixture("sink_cycle_6.aut"), "--regex", "b(a+bb)*",
                           "--machine"});
  const auto kv = parse_machine(even.out);
  EXPECT_EQ(kv.at("answer"), "yes");
  EXPECT_EQ(kv.at("method"), "simple-idempotent");
  const Result oracle = run({"constrained", fixture("sink_cycle_7.aut"), "--regex", "b(a+bb)*",
                             "--method", "oracle", "--machine"});
  EXPECT_EQ(parse_machine(oracle.out).at("answer"), "no");
}

TEST(Cli, ConstraintFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "csync_cli_constraint.aut";
  std::ofstream(path) << "alphabet a b\nstates 2\ninitial 0\nfinal 1\ntrans 0 b 1\ntrans 1 a 1\ntrans 1 b 1\n";
  const Result r = run({"constrained", fixture("cerny_3.aut"), "--constraint", path.string(), "--machine"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_machine(r.out).at("answer"), "yes");
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, csync::cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, csync::cli::kUsage);
  EXPECT_EQ(run({"constrained", fixture("cerny_3.aut")}).code, csync::cli::kUsage);
  EXPECT_EQ(run({"constrained", fixture("cerny_3.aut"), "--regex", "ac"}).code, csync::cli::kUsage);
  EXPECT_EQ(run({"constrained", fixture("cerny_3.aut"), "--regex", "a(b"}).code, csync::cli::kUsage);
  EXPECT_EQ(run({"constrained", fixture("cerny_4.aut"), "--regex", "a*", "--method", "commutative"}).code,
            csync::cli::kUsage);
  EXPECT_EQ(run({"sync", "/nonexistent.aut"}).code, csync::cli::kInvalidInput);
  const Result budget = run({"sync", fixture("cerny_5.aut"), "--shortest", "--budget", "10", "--machine"});
  EXPECT_EQ(budget.code, csync::cli::kBudget);
  EXPECT_EQ(parse_machine(budget.out).at("answer"), "unknown");
}

TEST(Cli, Classify) {
  const Result r = run({"classify", fixture("case2_7_3.aut"), "--machine"});
  EXPECT_EQ(r.code, 0);
  const auto kv = parse_machine(r.out);
  EXPECT_EQ(kv.at("letter_a"), "simple_idempotent");
  EXPECT_EQ(kv.at("letter_b"), "permutation");
  EXPECT_NE(kv.at("structure").find("p=3"), std::string::npos);
  EXPECT_EQ(kv.at("commutative"), "no");
}

TEST(Cli, GenWritesParsableFamilies) {
  const Result r = run({"gen", "--family", "cerny", "-n", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(csync::parse_dcsa(r.out), csync::cerny(5));
  const Result c2 = run({"gen", "--family", "case2", "-n", "7", "--p", "3"});
  EXPECT_EQ(csync::parse_dcsa(c2.out), csync::case2_automaton(7, 3));
  const Result rc = run({"gen", "--family", "random-commutative", "-n", "5", "--k", "2", "--seed", "9"});
  EXPECT_EQ(csync::parse_dcsa(rc.out), csync::random_commutative(5, 2, csync::Seed{9}));
  EXPECT_EQ(run({"gen", "--family", "nope", "-n", "3"}).code, csync::cli::kUsage);
}

TEST(Cli, Dot) {
  const Result r = run({"dot", fixture("cerny_3.aut")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("digraph"), std::string::npos);
  const Result re = run({"dot", fixture("cerny_3.aut"), "--regex", "b(a+bb)*"});
  EXPECT_NE(re.out.find("doublecircle"), std::string::npos);
}

TEST(Cli, BatchKeepsInputOrder) {
  const Result r = run({"sync", fixture("cerny_3.aut"), fixture("fig_commutative_nonsync.aut"),
                        fixture("cerny_5.aut"), "--jobs", "3", "--machine"});
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::vector<std::string> answers, files;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("answer=", 0) == 0) answers.push_back(line.substr(7));
    if (line.rfind("file=", 0) == 0) files.push_back(line.substr(5));
  }
  EXPECT_EQ(answers, (std::vector<std::string>{"yes", "no", "yes"}));
  ASSERT_EQ(files.size(), 3u);
  EXPECT_NE(files[1].find("nonsync"), std::string::npos);
}

TEST(Cli, Validate) {
  const Result r = run({"validate", fixture("cerny_3.aut"), "--machine"});
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());
}
