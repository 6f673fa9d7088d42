#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "rscensus/cli.hpp"

namespace rsc::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text, bool skip_comments = true) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (skip_comments && line.rfind('#', 0) == 0) continue;
    lines.push_back(line);
  }
  return lines;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("rscensus_cli_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  return dir / name;
}

TEST(Cli, OrbitOfFive) {
  const auto r = invoke({"orbit", "--value", "5", "--map", "theta"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 9u);  // column header + 8 points
  EXPECT_EQ(rows[1], "0,5,R");
  EXPECT_EQ(rows[8], "7,0,");
  EXPECT_NE(r.out.find("# stopping_time 7"), std::string::npos);
  EXPECT_EQ(r.out.rfind("# rscensus ", 0), 0u);
}

TEST(Cli, OrbitJsonAndWord) {
  const auto j = invoke({"orbit", "--value", "3/5", "--map", "phi", "--emit", "json"});
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(lines_of(j.out).at(0));
  EXPECT_EQ(doc["stopping_time"], 4);
  EXPECT_EQ(doc["points"][1], "3/2");

  const auto w = invoke({"orbit", "--value", "2", "--emit", "word"});
  EXPECT_EQ(lines_of(w.out).at(0), "R S R");

  const auto capped = invoke({"orbit", "--value", "5", "--max-steps", "3"});
  EXPECT_EQ(capped.code, 1);
}

TEST(Cli, DensityRowsAndHeader) {
  const auto file = scratch("d.csv");
  const auto r = invoke({"density", "--k", "2", "--m-range", "1..4", "--out", file.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(file);
  EXPECT_NE(text.find("# invocation: rscensus density --k 2 --m-range 1..4 --out"),
            std::string::npos);
  const auto rows = lines_of(text);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "k,M,lambda_count,omega_count,density_num,density_den,mode");
  EXPECT_EQ(rows[1], "2,1,4,0,0,1,exhaustive");
  EXPECT_EQ(rows[4], "2,4,400,0,0,1,exhaustive");
  fs::remove_all(file.parent_path());
}

TEST(Cli, DensityKOneMembersAndBounds) {
  const auto members = scratch("m.jsonl");
  const auto bounds = members.parent_path() / "b.csv";
  const auto r = invoke({"density", "--k", "1", "--m-range", "2..3", "--members-out",
                         members.string(), "--bounds-out", bounds.string()});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines_of(r.out);
  EXPECT_EQ(rows[1], "1,2,9,5,5,9,exhaustive");
  EXPECT_EQ(lines_of(slurp(members)).size(), 5u + 7u);
  const auto b = lines_of(slurp(bounds));
  EXPECT_EQ(b[1], "1,2,2,,");
  EXPECT_EQ(b[2], "1,3,2,15,16");
  fs::remove_all(members.parent_path());
}

TEST(Cli, DensityThreadsDoNotChangeBytes) {
  const auto one = invoke({"density", "--k", "2", "--m-range", "1..3", "--threads", "1"});
  const auto many = invoke({"density", "--k", "2", "--m-range", "1..3", "--threads", "8"});
  EXPECT_EQ(one.out, many.out);
}

TEST(Cli, DensityCheckpointResume) {
  const auto stem = scratch("ck");
  const std::vector<std::string> base = {"density", "--k", "2", "--m-range", "3..4",
                                         "--checkpoint", stem.string(), "--checkpoint-every", "2"};
  auto first = base;
  first.insert(first.end(), {"--max-blocks", "15"});
  const auto partial = invoke(first);
  ASSERT_EQ(partial.code, 0);
  EXPECT_EQ(lines_of(partial.out).size(), 2u);  // M=3 done, M=4 interrupted
  EXPECT_TRUE(fs::exists(stem.string() + ".M4"));

  auto second = base;
  second.push_back("--resume");
  const auto resumed = invoke(second);
  const auto fresh = invoke({"density", "--k", "2", "--m-range", "3..4"});
  EXPECT_EQ(lines_of(resumed.out), lines_of(fresh.out));
  fs::remove_all(stem.parent_path());
}

TEST(Cli, SampledDensityIsLabelled) {
  const auto a = invoke({"density", "--k", "3", "--m-range", "5", "--samples", "200", "--seed", "9"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(lines_of(a.out).at(1), "3,5,22500,0,0,1,sampled:200:9");
}

TEST(Cli, VerifyTrace) {
  const auto r = invoke({"verify", "--suite", "trace", "--k", "3", "--samples", "500", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = nlohmann::json::parse(lines_of(r.out).at(0));
  EXPECT_EQ(doc["failures"], 0);
  EXPECT_EQ(doc["samples"], 500);
  EXPECT_TRUE(doc["first_failure_witness"].is_null());
}

TEST(Cli, VerifyOtherSuites) {
  for (const std::string suite : {"entries", "bounds", "freeness", "prefilter", "fixedpoint"}) {
    const auto r = invoke({"verify", "--suite", suite, "--k", "2", "--samples", "200", "--max-exp", "3"});
    EXPECT_EQ(r.code, 0) << suite << r.out;
  }
}

TEST(Cli, SearchDefaultAndSharedEigenvectorPair) {
  const auto none = invoke({"search", "--k", "2", "--exp-max", "4"});
  EXPECT_EQ(none.code, 0);
  EXPECT_TRUE(lines_of(none.out).empty());

  const auto hits = invoke({"search", "--k", "1", "--exp-max", "2", "--generators", "2,1,1,2"});
  EXPECT_EQ(hits.code, 1);
  const auto rows = lines_of(hits.out);
  ASSERT_EQ(rows.size(), 4u);
  const auto doc = nlohmann::json::parse(rows[0]);
  EXPECT_EQ(doc["lambda"], 1);
  EXPECT_EQ(doc["matrix"], nlohmann::json::parse("[2,1,2,3]"));
}

TEST(Cli, NkFixedPointFactor) {
  const auto nk = nlohmann::json::parse(lines_of(invoke({"nk", "--k", "2"}).out).at(0));
  EXPECT_EQ(nk["n"], 3);
  EXPECT_EQ(nk["at_n"]["eigen_floor"], "1679616/485809");
  EXPECT_EQ(nk["below"]["eigen_ok"], false);

  const auto fp = nlohmann::json::parse(lines_of(invoke({"fixed-point", "--matrix", "1,2,1,0"}).out).at(0));
  EXPECT_EQ(fp["fixed_points"]["points"], nlohmann::json::parse(R"(["-1","2"])"));
  EXPECT_EQ(fp["eigenvalues"], nlohmann::json::parse("[-1,2]"));

  const auto f = nlohmann::json::parse(lines_of(invoke({"factor", "--matrix", "2,1,1,1"}).out).at(0));
  EXPECT_EQ(f["word"], "F G");
}

TEST(Cli, EnumerateMatrices) {
  const auto r = invoke({"enumerate", "--k", "1", "--m", "1", "--emit", "matrices"});
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "b1,a1,a,b,c,d");
  EXPECT_EQ(rows[4], "1,1,4,2,1,2");
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{}, {"orbit"}, {"orbit", "--value", "1/0"},
        {"density", "--k", "2", "--m-range", "4..1"}, {"density", "--k", "0", "--m-range", "1"},
        {"verify", "--suite", "nope"}, {"fixed-point", "--matrix", "1,2,3"},
        {"factor", "--matrix", "2,1,1,2"}, {"bogus"}}) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "<none>" : args[0]);
    EXPECT_FALSE(r.err.empty());
  }
  const auto bad = invoke({"orbit", "--value", "5", "--map", "gamma"});
  EXPECT_NE(bad.err.find("--map"), std::string::npos);
}

}  // namespace
}  // namespace rsc::cli
