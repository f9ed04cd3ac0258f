// End-to-end checks of the command-line tool: exit codes and outputs.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "privsub/serialize.hpp"

namespace privsub {
namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PRIVSUB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "privsub_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string last_line(const std::string& text) {
  std::string s = text;
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s.substr(s.rfind('\n') + 1);
}

TEST(Cli, GroupExtendAlreadyMaximal) {
  const auto r = run("group extend --gens \"ZI,IZ\" --d 2 --format text");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "d=2 n=2\nII\nIZ\nZI\nZZ\n");
}

TEST(Cli, AnnihilatorOfEmptyListIsWholeGroup) {
  const auto r = run("group annihilator --gens \"\" --format text");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "d=2 n=1\nI\nX\nZ\n-iY\n");
  const auto j = Json::parse(run("group annihilator --gens \"\" --n 2 --no-timestamp").out);
  EXPECT_EQ(j["size"], 16);
}

TEST(Cli, CharacterMatrixCsvForQutrit) {
  const auto r = run("group charmatrix --d 3 --n 1 --format text");
  ASSERT_EQ(r.status, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "class,X0Z0,X1Z0,X2Z0,X0Z1,X1Z1,X2Z1,X0Z2,X1Z2,X2Z2");
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line, "X1Z0,0,0,0,1,1,1,2,2,2");
}

TEST(Cli, AbelianVerdictExitCodes) {
  EXPECT_EQ(run("group abelian --gens \"ZI,IZ\"").status, 0);
  EXPECT_EQ(run("group abelian --gens \"XI,ZI\"").status, 1);
}

TEST(Cli, ChannelFromGroupThenApply) {
  const auto chan = scratch("phaseflip.json");
  const auto state = scratch("xx.json");
  const auto out = scratch("out.json");
  ASSERT_EQ(run("channel from-group --gens \"ZI,IZ\" --out " + chan.string()).status, 0);
  // (I + XX)/4: the phase-flip channel removes the off-diagonal part.
  write_file(state,
             R"({"n":4,"re":[[0.25,0,0,0.25],[0,0.25,0.25,0],[0,0.25,0.25,0],[0.25,0,0,0.25]],)"
             R"("im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})");
  ASSERT_EQ(run("channel apply --channel " + chan.string() + " --in " + state.string() +
                " --out " + out.string())
                .status,
            0);
  const auto rho = operator_from_json(read_json_file(out.string()));
  EXPECT_LE(max_abs(rho - 0.25 * DenseOperator::Identity(4, 4)), 1e-12);
}

TEST(Cli, CondexpOntoScalarsDepolarizes) {
  const auto chan = scratch("depol.json");
  const auto state = scratch("q.json");
  const auto out = scratch("q_out.json");
  ASSERT_EQ(run("channel condexp --algebra scalars --n 1 --out " + chan.string()).status, 0);
  write_file(state, R"({"n":2,"re":[[0.9,0.1],[0.1,0.1]],"im":[[0,0.2],[-0.2,0]]})");
  ASSERT_EQ(run("channel apply --channel " + chan.string() + " --in " + state.string() +
                " --out " + out.string())
                .status,
            0);
  EXPECT_LE(max_abs(operator_from_json(read_json_file(out.string())) -
                    0.5 * DenseOperator::Identity(2, 2)),
            1e-12);
}

TEST(Cli, ApplyDimensionMismatchIsPrecondition) {
  const auto chan = scratch("pf2.json");
  const auto state = scratch("small.json");
  ASSERT_EQ(run("channel from-group --gens \"ZI,IZ\" --out " + chan.string()).status, 0);
  write_file(state, R"({"n":2,"re":[[1,0],[0,0]],"im":[[0,0],[0,0]]})");
  EXPECT_EQ(run("channel apply --channel " + chan.string() + " --in " + state.string()).status, 3);
}

TEST(Cli, ChoiEqual) {
  const auto chan = scratch("pf3.json");
  ASSERT_EQ(run("channel from-group --gens \"ZI,IZ\" --out " + chan.string()).status, 0);
  EXPECT_EQ(run("channel choi-equal --in " + chan.string() + " --algebra delta4").status, 0);
  EXPECT_EQ(run("channel choi-equal --in " + chan.string() + " --channel identity --n 2").status, 1);
}

TEST(Cli, CertifyConstructedAlgebra) {
  const auto r = run("privacy certify --group \"ZI,IZ\" --construct --no-timestamp");
  ASSERT_EQ(r.status, 0);
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["verdict"].get<bool>());
  EXPECT_LE(max_abs(operator_from_json(j["rho0"]) - 0.25 * DenseOperator::Identity(4, 4)), 1e-12);
  EXPECT_EQ(j["seed"], 1729);
  EXPECT_EQ(j["tolerance"], 1e-8);
  EXPECT_FALSE(j.contains("timestamp"));
}

TEST(Cli, CertifyAgainstIdentityChannelFails) {
  const auto r = run("privacy certify --channel identity --n 2 --algebra \"II,IX,YY,YZ\"");
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(Json::parse(r.out)["verdict"].get<bool>());
}

TEST(Cli, Quasiorthogonality) {
  EXPECT_EQ(run("privacy quasiorth --a delta4 --b \"II,IX,YY,YZ\"").status, 0);
  EXPECT_EQ(run("privacy quasiorth --a delta4 --b delta4").status, 1);
  EXPECT_EQ(run("privacy suite --a full --b scalars --n 2").status, 0);
  EXPECT_EQ(run("privacy quasiorth --a delta4 --b delta2").status, 3);
}

TEST(Cli, SubsystemForm) {
  EXPECT_EQ(run("privacy subsystem --group \"ZI,IZ\" --algebra \"II,IX,YY,YZ\"").status, 0);
}

TEST(Cli, PhaseFlipDemoTranscript) {
  const auto r = run("demo phaseflip --format text");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(last_line(r.out), "Φ(ρ) = I/4 for all tested ρ; max deviation < 1e−8");
}

TEST(Cli, QutritDemoStructuralChecks) {
  const auto j = Json::parse(run("demo qutrit --no-timestamp").out);
  ASSERT_TRUE(j.contains("checks"));
  EXPECT_TRUE(j["checks"][0]["passed"].get<bool>());
  EXPECT_TRUE(j["checks"][1]["passed"].get<bool>());
  EXPECT_TRUE(j["checks"][2]["passed"].get<bool>());
}

TEST(Cli, QutritPerturbedControlFails) {
  const auto r = run("demo qutrit --perturb --no-timestamp");
  EXPECT_EQ(r.status, 1);
  const auto j = Json::parse(r.out);
  EXPECT_FALSE(j["verdict"].get<bool>());
  EXPECT_TRUE(j.contains("first_failure"));
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("group close --bogus").status, 2);
  EXPECT_EQ(run("group close --gens XQ").status, 2);
  EXPECT_EQ(run("group").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("group close --gens X --format yaml").status, 2);
  EXPECT_EQ(run("channel apply --channel /nonexistent.json --in /nonexistent.json").status, 2);
  EXPECT_EQ(run("group close --in /nonexistent.txt").status, 2);
}

TEST(Cli, PreconditionErrors) {
  EXPECT_EQ(run("group extend --gens \"X,Z\"").status, 3);
  EXPECT_EQ(run("channel from-group --gens \"X,Z\"").status, 3);
  EXPECT_EQ(run("privacy certify --group \"X,Z\" --construct").status, 3);
}

TEST(Cli, DeterministicJson) {
  for (const char* args : {"privacy certify --group \"XI,IX\" --construct --no-timestamp",
                           "channel condexp --algebra \"II,IX,YY,YZ\" --no-timestamp",
                           "demo phaseflip --no-timestamp"}) {
    const auto first = run(args);
    const auto second = run(args);
    EXPECT_EQ(first.out, second.out) << args;
    EXPECT_FALSE(first.out.empty());
  }
}

TEST(Cli, SeedAndToleranceEchoed) {
  const auto j = Json::parse(run("group close --gens ZI --seed 7 --tol 1e-6").out);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["tolerance"], 1e-6);
  EXPECT_TRUE(j.contains("timestamp"));
  const auto text = run("privacy quasiorth --a delta4 --b delta4 --seed 7 --format text");
  EXPECT_NE(text.out.find("seed 7"), std::string::npos);
}

TEST(Cli, SubgroupFileInput) {
  const auto file = scratch("group.txt");
  write_file(file, "d=3 n=2\nX2Z1:I\nI:X1Z1\n");
  const auto j = Json::parse(run("group close --in " + file.string()).out);
  EXPECT_EQ(j["size"], 9);
  EXPECT_TRUE(j["abelian"].get<bool>());
}

}  // namespace
}  // namespace privsub
