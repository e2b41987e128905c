#include <gtest/gtest.h>

#include <random>

#include "reference.hpp"
#include "sierpinski/oracle.hpp"
#include "sierpinski/sampling.hpp"
#include "sierpinski/steiner_pack.hpp"

using namespace sierpinski;

namespace {

std::vector<int> codes(const SierpinskiGraph& g, const std::vector<VertexWord>& ws) {
  std::vector<int> out;
  for (const auto& x : ws) out.push_back(static_cast<int>(g.code(x)));
  return out;
}

// Checks the witness of a report with the library verifier.
void expect_witness(const GenericGraph& g, const ConnectivityReport& r) {
  std::vector<std::vector<std::pair<int, int>>> trees;
  for (const auto& ids : r.witness) {
    auto& t = trees.emplace_back();
    for (int id : ids) t.push_back(g.edge(id));
  }
  ASSERT_EQ(static_cast<int>(trees.size()), r.value);
  EXPECT_TRUE(verify_packing(g, trees, r.subset, r.flavor)) << verify_packing(g, trees, r.subset, r.flavor).reason;
}

GenericGraph random_graph(int n, int m, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) all.emplace_back(a, b);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(std::min<int>(m, static_cast<int>(all.size()))));
  return GenericGraph(n, all);
}

}  // namespace

TEST(Verifier, Examples) {
  const auto k4 = GenericGraph::complete(4);
  const std::vector<int> pair{0, 1};
  EXPECT_TRUE(verify_steiner_tree(k4, std::vector<std::pair<int, int>>{{0, 1}}, pair));
  const std::vector<int> tri{0, 1, 2};
  EXPECT_FALSE(verify_steiner_tree(k4, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}}, tri));
  const auto missing = verify_steiner_tree(k4, std::vector<std::pair<int, int>>{{0, 1}}, tri);
  EXPECT_FALSE(missing);
  EXPECT_NE(missing.reason.find("not covered"), std::string::npos) << missing.reason;
  EXPECT_FALSE(verify_steiner_tree(k4, std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}, pair));

  // Edge-disjoint trees 0-3-1 and {0-2, 2-1, 2-3}; both contain non-terminal 3.
  const std::vector<std::vector<std::pair<int, int>>> share{{{0, 3}, {1, 3}}, {{0, 2}, {2, 3}, {1, 2}}};
  const std::vector<int> ends{0, 1};
  EXPECT_TRUE(verify_packing(k4, share, ends, Flavor::edge));
  EXPECT_FALSE(verify_packing(k4, share, ends, Flavor::vertex));
  const std::vector<std::vector<std::pair<int, int>>> twice{{{0, 1}}, {{0, 1}}};
  EXPECT_FALSE(verify_packing(k4, twice, ends, Flavor::edge));
}

TEST(Verifier, ConstructorOutputOnSmallGraph) {
  const SierpinskiGraph g(2, 3);
  const auto u = worst_case_subset(2, 3, 3);
  const auto set = construct_steiner_trees(g, u);
  EXPECT_TRUE(verify_packing(g, set.trees, u, Flavor::edge));
  EXPECT_TRUE(verify_packing(g, set.trees, u, Flavor::vertex));
}

TEST(MaxDisjointTrees, Examples) {
  const auto k4 = GenericGraph::complete(4);
  const std::vector<int> three{0, 1, 2};
  const auto a = max_disjoint_trees(k4, three, Flavor::edge);
  EXPECT_EQ(a.value, 2);
  EXPECT_TRUE(a.complete);
  expect_witness(k4, a);

  const auto k6 = GenericGraph::complete(6);
  const std::vector<int> six{0, 1, 2, 3, 4, 5};
  const auto b = max_disjoint_trees(k6, six, Flavor::vertex);
  EXPECT_EQ(b.value, 3);
  expect_witness(k6, b);

  const SierpinskiGraph s(2, 3);
  const auto g = GenericGraph::from_sierpinski(s);
  const auto c = max_disjoint_trees(g, codes(s, worst_case_subset(2, 3, 3)), Flavor::edge);
  EXPECT_EQ(c.value, 1);
  EXPECT_TRUE(c.complete);
}

TEST(MaxDisjointTrees, CapsAndBudgets) {
  const SierpinskiGraph s(3, 3);  // 27 vertices, 39 edges
  const auto g = GenericGraph::from_sierpinski(s);
  SearchLimits tight;
  tight.max_vertices = 10;
  const std::vector<int> u{0, 13, 26};
  EXPECT_THROW(max_disjoint_trees(g, u, Flavor::edge, tight), SizeCapExceeded);
  SearchLimits budget;
  budget.max_nodes = 1;
  budget.partition_bound = false;
  const auto r = max_disjoint_trees(GenericGraph::complete(6), std::vector<int>{0, 1, 2, 3}, Flavor::edge, budget);
  EXPECT_FALSE(r.complete);
  EXPECT_THROW(max_disjoint_trees(g, std::vector<int>{0}, Flavor::edge), InvalidInput);
  EXPECT_THROW(max_disjoint_trees(g, std::vector<int>{0, 0}, Flavor::edge), InvalidInput);
}

// The search agrees with exhaustive edge (and vertex) labeling.
TEST(MaxDisjointTrees, AgreesWithBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 2);
    const int m = 5 + static_cast<int>(rng() % 3);
    const auto g = random_graph(n, m, rng);
    const int k = 2 + static_cast<int>(rng() % 2);
    std::vector<int> s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), 0);
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(static_cast<std::size_t>(k));
    for (Flavor f : {Flavor::edge, Flavor::vertex}) {
      const auto r = max_disjoint_trees(g, s, f);
      const int expected = ref::brute_force_packing(n, g.edges(), s, f == Flavor::vertex);
      EXPECT_EQ(r.value, expected) << "trial " << trial << " " << to_string(f);
      expect_witness(g, r);
    }
  }
  const auto k5 = GenericGraph::complete(5);
  EXPECT_EQ(max_disjoint_trees(k5, std::vector<int>{0, 1, 2, 3, 4}, Flavor::edge).value,
            ref::brute_force_packing(5, k5.edges(), {0, 1, 2, 3, 4}, false));
}

// Switching the cut-counting bound off changes only the effort, not the value.
TEST(MaxDisjointTrees, PruningDoesNotChangeValues) {
  SearchLimits plain;
  plain.partition_bound = false;
  const SierpinskiGraph s(2, 4);
  const auto g = GenericGraph::from_sierpinski(s);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> sub;
    for (const auto& x : random_subset(s, 2 + static_cast<int>(rng() % 3), rng())) sub.push_back(static_cast<int>(s.code(x)));
    for (Flavor f : {Flavor::edge, Flavor::vertex}) {
      EXPECT_EQ(max_disjoint_trees(g, sub, f).value, max_disjoint_trees(g, sub, f, plain).value);
    }
  }
}

TEST(ConnectivityK, Examples) {
  EXPECT_EQ(connectivity_k(GenericGraph::complete(5), 3, Flavor::edge).value, 3);
  const SierpinskiGraph s13(1, 3);
  EXPECT_EQ(connectivity_k(GenericGraph::from_sierpinski(s13), 2, Flavor::edge).value, 2);
  const SierpinskiGraph s23(2, 3);
  const auto sweep = connectivity_k(GenericGraph::from_sierpinski(s23), 3, Flavor::vertex);
  EXPECT_EQ(sweep.reports.size(), 84u);
  EXPECT_EQ(sweep.value, 1);
  EXPECT_TRUE(sweep.complete);
}

TEST(ConnectivityK, CompleteGraphs) {
  for (int n = 3; n <= 6; ++n)
    for (int k = 2; k <= n; ++k)
      for (Flavor f : {Flavor::edge, Flavor::vertex}) {
        const auto sweep = connectivity_k(GenericGraph::complete(n), k, f);
        EXPECT_EQ(sweep.value, n - ceil_half(k)) << "K_" << n << " k=" << k;
        EXPECT_TRUE(sweep.complete);
      }
}

TEST(ConnectivityK, ClassicalConnectivityOfSierpinskiGraphs) {
  for (auto [n, l] : {std::pair{1, 3}, {2, 3}, {1, 4}, {2, 4}}) {
    const SierpinskiGraph s(n, l);
    const auto g = GenericGraph::from_sierpinski(s);
    for (Flavor f : {Flavor::edge, Flavor::vertex}) EXPECT_EQ(connectivity_k(g, 2, f).value, l - 1);
  }
}

TEST(ConnectivityK, MonotoneAndFlavorOrdered) {
  const SierpinskiGraph s(2, 3);
  const auto g = GenericGraph::from_sierpinski(s);
  int previous = 1 << 20;
  for (int k = 2; k <= 5; ++k) {
    const auto edge = connectivity_k(g, k, Flavor::edge);
    const auto vertex = connectivity_k(g, k, Flavor::vertex);
    EXPECT_LE(edge.value, previous);
    previous = edge.value;
    for (std::size_t i = 0; i < edge.reports.size(); ++i) EXPECT_LE(vertex.reports[i].value, edge.reports[i].value);
  }
}

TEST(ConnectivityK, SubsetListIsMarkedAsBound) {
  const auto g = GenericGraph::complete(5);
  const auto sweep = connectivity_k(g, 3, Flavor::edge, {}, 2, std::vector<std::vector<int>>{{0, 1, 2}});
  EXPECT_EQ(sweep.value, 3);
  EXPECT_FALSE(sweep.complete);
}

TEST(ConnectivityK, ThreadCountDoesNotChangeReports) {
  const SierpinskiGraph s(2, 3);
  const auto g = GenericGraph::from_sierpinski(s);
  const auto one = connectivity_k(g, 3, Flavor::edge, {}, 1);
  const auto many = connectivity_k(g, 3, Flavor::edge, {}, 4);
  ASSERT_EQ(one.reports.size(), many.reports.size());
  for (std::size_t i = 0; i < one.reports.size(); ++i) {
    EXPECT_EQ(one.reports[i].subset, many.reports[i].subset);
    EXPECT_EQ(one.reports[i].value, many.reports[i].value);
    EXPECT_EQ(one.reports[i].witness, many.reports[i].witness);
  }
}

// The search value bounds the constructor from above, with equality on the
// extreme-vertex subsets.
TEST(OracleVersusConstructor, LowerAndTightBounds) {
  for (auto [n, l] : {std::pair{2, 3}, {2, 4}}) {
    const SierpinskiGraph s(n, l);
    const auto g = GenericGraph::from_sierpinski(s);
    for (int k = 3; k <= l; ++k) {
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto u = random_subset(s, k, seed);
        const auto built = construct_steiner_trees(s, u);
        for (Flavor f : {Flavor::edge, Flavor::vertex}) {
          const auto r = max_disjoint_trees(g, codes(s, u), f);
          EXPECT_GE(r.value, static_cast<int>(built.trees.size()));
        }
      }
      const auto worst = worst_case_subset(n, l, k);
      EXPECT_EQ(max_disjoint_trees(g, codes(s, worst), Flavor::edge).value, l - ceil_half(k));
    }
  }
}
