#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

using namespace sierpinski;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sierpinski");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sierpinski_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(GraphExport, DotHasOneLinePerEdge) {
  std::ostringstream os;
  io::write_graph_dot(os, SierpinskiGraph(2, 4));
  const auto text = os.str();
  std::size_t lines = 0;
  for (std::size_t p = text.find(" -- "); p != std::string::npos; p = text.find(" -- ", p + 1)) ++lines;
  EXPECT_EQ(lines, 30u);
  EXPECT_NE(text.find("\"01\" -- \"10\""), std::string::npos);
}

TEST(GraphExport, JsonShape) {
  const auto j = io::graph_json(SierpinskiGraph(1, 5));
  EXPECT_EQ(j["n"], 1);
  EXPECT_EQ(j["l"], 5);
  EXPECT_EQ(j["vertices"].size(), 5u);
  EXPECT_EQ(j["edges"].size(), 10u);
}

TEST(TreeSetJson, RoundTripThroughVerifier) {
  const SierpinskiGraph g(3, 4);
  const auto u = worst_case_subset(3, 4, 4);
  const auto set = construct_steiner_trees(g, u, ConnectorMode::minimal);
  const auto text = io::tree_set_json(set).dump();
  const auto parsed = io::parse_tree_set_text(text);
  EXPECT_EQ(parsed.depth, 3);
  EXPECT_EQ(parsed.base, 4);
  EXPECT_EQ(parsed.targets, set.targets);
  EXPECT_EQ(parsed.trees, set.trees);
  EXPECT_EQ(parsed.mode, "minimal");
  EXPECT_TRUE(verify_packing(g, parsed.trees, parsed.targets, Flavor::vertex));
  EXPECT_THROW(io::parse_tree_set_text("{\"n\":2}"), InvalidInput);
  EXPECT_THROW(io::parse_tree_set_text("not json"), InvalidInput);
}

TEST(TreeSetDot, OneColourPerTree) {
  const SierpinskiGraph g(2, 5);
  const auto set = construct_steiner_trees(g, worst_case_subset(2, 5, 3));
  std::ostringstream os;
  io::write_tree_set_dot(os, set);
  for (std::size_t i = 0; i < set.trees.size(); ++i) {
    EXPECT_NE(os.str().find(std::string("color=") + io::palette(i)), std::string::npos);
  }
}

TEST(HamPathJson, Shape) {
  const auto j = io::ham_path_json(decompose_complete(5));
  EXPECT_EQ(j["N"], 5);
  EXPECT_EQ(j["paths"].size(), 2u);
  EXPECT_EQ(j["matching"].size(), 2u);
}

TEST(Cli, GenExamples) {
  const auto dot = run({"gen", "-n", "2", "-l", "4", "--format", "dot"});
  EXPECT_EQ(dot.code, 0);
  std::set<std::string> names;
  std::istringstream lines(dot.out);
  for (std::string line; std::getline(lines, line);) {
    auto a = line.find('"');
    while (a != std::string::npos) {
      const auto b = line.find('"', a + 1);
      names.insert(line.substr(a + 1, b - a - 1));
      a = line.find('"', b + 1);
    }
  }
  EXPECT_EQ(names.size(), 16u);
  const auto json = run({"gen", "-n", "1", "-l", "5", "--format", "json"});
  EXPECT_EQ(json.code, 0);
  EXPECT_EQ(io::Json::parse(json.out)["edges"].size(), 10u);
  const auto refused = run({"gen", "-n", "9", "-l", "5"});
  EXPECT_EQ(refused.code, 3);
  EXPECT_NE(refused.err.find("cap"), std::string::npos);
  EXPECT_EQ(run({"gen", "-n", "2", "-l", "4", "--cap", "200000"}).code, 2);
  EXPECT_EQ(run({"gen", "-n", "2", "-l", "4", "--cap", "200000", "--unsafe"}).code, 0);
}

TEST(Cli, PackExamples) {
  const auto worst = run({"pack", "-n", "2", "-l", "4", "-k", "3", "--u-policy", "worst"});
  EXPECT_EQ(worst.code, 0);
  EXPECT_EQ(io::Json::parse(worst.out)["trees"].size(), 2u);
  EXPECT_NE(worst.err.find("edge-disjoint: pass"), std::string::npos);
  EXPECT_NE(worst.err.find("internally-disjoint: pass"), std::string::npos);

  const auto explicit_u = run({"pack", "-n", "2", "-l", "3", "--u", "00,11,22"});
  EXPECT_EQ(explicit_u.code, 0);
  EXPECT_EQ(io::Json::parse(explicit_u.out)["trees"].size(), 1u);

  const auto large = run({"pack", "-n", "2", "-l", "3", "-k", "4", "--u-policy", "random", "--seed", "7"});
  EXPECT_EQ(large.code, 0);
  EXPECT_EQ(io::Json::parse(large.out)["trees"].size(), 1u);

  EXPECT_EQ(run({"pack", "-n", "2", "-l", "3", "-k", "3", "--u-policy", "random"}).code, 2);
  EXPECT_EQ(run({"pack", "-n", "2", "-l", "3", "--u", "00,11,33"}).code, 2);
}

TEST(Cli, PackIsByteIdentical) {
  const std::vector<std::string> args{"pack", "-n", "3", "-l", "5", "-k", "4", "--u-policy", "random", "--seed", "42"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, VerifyRereadsTreeSet) {
  const auto path = temp_path("trees.json");
  EXPECT_EQ(run({"pack", "-n", "3", "-l", "4", "-k", "4", "--u-policy", "worst", "--out", path}).code, 0);
  const auto ok = run({"verify", "--in", path});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("internally-disjoint: pass"), std::string::npos);

  // Corrupt the file by duplicating the first tree.
  auto j = io::Json::parse(slurp(path));
  j["trees"].push_back(j["trees"][0]);
  std::ofstream(path) << j.dump();
  EXPECT_EQ(run({"verify", "--in", path}).code, 1);
  std::remove(path.c_str());
}

TEST(Cli, OracleExample) {
  const auto r = run({"oracle", "--complete", "5", "-k", "3", "--flavor", "edge"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("lambda_3 (edge): 3"), std::string::npos) << r.err;
  const auto csv_path = temp_path("oracle.csv");
  EXPECT_EQ(run({"oracle", "-n", "2", "-l", "3", "--u-policy", "worst", "-k", "3", "--flavor", "both", "--out", csv_path})
                .code,
            0);
  const auto csv = slurp(csv_path);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "S,flavor,value,complete,nodes,millis");
  EXPECT_NE(csv.find("00 11 22,edge,1,true"), std::string::npos);
  EXPECT_NE(csv.find("00 11 22,vertex,1,true"), std::string::npos);
  std::remove(csv_path.c_str());
}

TEST(Cli, PropsExample) {
  const auto r = run({"props", "-n", "3", "-l", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n3,3,27,39,"), std::string::npos);
  EXPECT_NE(r.err.find("[inconsistent]"), std::string::npos);
}

TEST(Cli, HamdecompExample) {
  const auto r = run({"hamdecomp", "--sierpinski", "-n", "2", "-l", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(io::Json::parse(r.out)["paths"].size(), 2u);
  EXPECT_NE(r.err.find("verification: pass"), std::string::npos);
  EXPECT_EQ(run({"hamdecomp", "--complete", "7"}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"pack", "-n", "2", "-l", "3", "-k", "3", "--u-policy", "sideways"}).code, 2);
}
