#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "efeq/cli.hpp"
#include "efeq/structure.hpp"
#include "efeq/structure_io.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "efeq");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = efeq::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string write_order(int n) {
  const auto path = std::filesystem::temp_directory_path() / ("efeq_lo" + std::to_string(n) + ".json");
  std::ofstream(path) << efeq::structure_to_json(efeq::linear_order(n)).dump();
  return path.string();
}

}  // namespace

TEST(Cli, SolveExitCodes) {
  const std::string l3 = write_order(3), l4 = write_order(4);
  EXPECT_EQ(run({"solve", l3, l4, "-k", "2"}).code, 0);
  EXPECT_EQ(run({"solve", l3, l4, "-k", "3"}).code, 1);
  EXPECT_EQ(run({"solve", l3, l4, "-k", "3", "--budget", "2"}).code, 2);
}

TEST(Cli, UsageAndBadInput) {
  EXPECT_EQ(run({"frobnicate"}).code, 10);
  EXPECT_EQ(run({"play", "--alpha", "0"}).code, 10);
  EXPECT_EQ(run({"play", "--alpha", "w^w"}).code, 10);
  EXPECT_EQ(run({"play", "--param", "/nonexistent/spec.json"}).code, 11);
}

TEST(Cli, PlayIsDeterministicAndVerified) {
  const std::vector<std::string> args{"--seed", "7", "--format", "json", "play", "--alpha", "3", "--count", "5"};
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.at("passed"), j.at("games"));
}

TEST(Cli, GlobalFlagsAfterSubcommand) {
  const CliRun r = run({"validate", "--N", "6", "--alpha-star", "3", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NO_THROW(nlohmann::json::parse(r.out));
}

TEST(Cli, RigidityAndExport) {
  const CliRun r = run({"rigidity", "--N", "6", "--alpha-star", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("nontrivial family found"), std::string::npos);
  const CliRun e = run({"export", "--N", "8", "--alpha-star", "3", "--sorts", "[0];[0,1]", "--word-bound", "0"});
  EXPECT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(efeq::structure_from_json(nlohmann::json::parse(e.out)).size(), 2);
}

TEST(Cli, ReplEvaluatesAtoms) {
  const CliRun r = run({"repl", "--N", "8", "--alpha-star", "3"}, "quit\n");
  EXPECT_EQ(r.code, 0) << r.err;
}
