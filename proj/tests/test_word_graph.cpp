#include <gtest/gtest.h>

#include <map>
#include <set>
#include <thread>

#include "reference.hpp"
#include "sierpinski/graph.hpp"

using namespace sierpinski;

namespace {

VertexWord w(const char* s, int base) { return VertexWord::parse(s, base); }

std::set<ref::Edge> library_edges(const SierpinskiGraph& g) {
  std::set<ref::Edge> out;
  for (auto e : g.edges()) out.insert(e);
  return out;
}

}  // namespace

TEST(VertexWord, ParseEncodeRoundTrip) {
  for (int base : {3, 4, 7, 36}) {
    for (Code c = 0; c < 200; ++c) {
      const auto v = VertexWord::decode(c % checked_pow(base, 3), 3, base);
      EXPECT_EQ(VertexWord::parse(v.str(), base), v);
      EXPECT_EQ(v.encode(base), c % checked_pow(base, 3));
    }
  }
  EXPECT_EQ(w("013", 4).encode(4), 0u * 16 + 1 * 4 + 3);
  EXPECT_THROW(VertexWord::parse("03", 3), InvalidInput);
  EXPECT_THROW(VertexWord::parse("", 3), InvalidInput);
}

TEST(VertexWord, DigitSpelling) {
  EXPECT_EQ(w("az", 36)[0], 10);
  EXPECT_EQ(w("az", 36)[1], 35);
  EXPECT_EQ(w("az", 36).str(), "az");
}

TEST(SierpinskiGraph, RejectsDegenerateParameters) {
  EXPECT_THROW(SierpinskiGraph(0, 3), InvalidInput);
  EXPECT_THROW(SierpinskiGraph(2, 2), InvalidInput);
  EXPECT_THROW(SierpinskiGraph(2, 37), InvalidInput);
  EXPECT_THROW(SierpinskiGraph(60, 5), SizeCapExceeded);
}

TEST(SierpinskiGraph, AdjacencyExamples) {
  const SierpinskiGraph g(2, 4);
  EXPECT_TRUE(g.is_adjacent(w("01", 4), w("10", 4)));
  EXPECT_TRUE(g.is_adjacent(w("00", 4), w("01", 4)));
  EXPECT_FALSE(g.is_adjacent(w("01", 4), w("20", 4)));
  EXPECT_THROW((void)g.is_adjacent(w("0", 4), w("01", 4)), InvalidInput);
  EXPECT_THROW((void)g.is_adjacent(w("04", 5), w("01", 4)), InvalidInput);
}

TEST(SierpinskiGraph, NeighborExamples) {
  const SierpinskiGraph g(2, 3);
  EXPECT_EQ(g.neighbors(w("00", 3)), (std::vector<VertexWord>{w("01", 3), w("02", 3)}));
  EXPECT_EQ(g.neighbors(w("01", 3)), (std::vector<VertexWord>{w("00", 3), w("02", 3), w("10", 3)}));
  for (int l = 3; l <= 6; ++l) {
    const SierpinskiGraph k(1, l);
    for (Code v = 0; v < k.order(); ++v) EXPECT_EQ(k.neighbor_codes(v).size(), static_cast<std::size_t>(l - 1));
  }
}

// The prefix/swap rule evaluated pairwise, the generated neighbour lists, and
// the recursive copy-and-bridge construction must all describe one graph.
TEST(SierpinskiGraph, MatchesRecursiveConstruction) {
  for (int l = 3; l <= 6; ++l) {
    for (int n = 1; ref::ipow(l, n) <= 1300; ++n) {
      const SierpinskiGraph g(n, l);
      const SierpinskiGraph lazy(n, l, 0);
      const auto expected = ref::recursive_edges(n, l);
      EXPECT_EQ(library_edges(g), expected) << "S(" << n << "," << l << ")";
      EXPECT_EQ(library_edges(lazy), expected);
      if (g.order() <= 300) {
        for (Code a = 0; a < g.order(); ++a) {
          for (Code b = 0; b < g.order(); ++b) {
            const bool e = expected.count(ordered(a, b)) > 0 && a != b;
            ASSERT_EQ(SierpinskiGraph::words_adjacent(g.word(a), g.word(b)), e);
          }
        }
      }
    }
  }
}

TEST(SierpinskiGraph, CountsAndDegreeHistogram) {
  for (int l = 3; l <= 7; ++l) {
    for (int n = 1; ref::ipow(l, n) <= 10000; ++n) {
      const SierpinskiGraph g(n, l);
      EXPECT_EQ(g.order(), ref::ipow(l, n));
      const auto edges = g.edges();
      EXPECT_EQ(edges.size(), (ref::ipow(l, n + 1) - l) / 2);
      EXPECT_EQ(g.size(), edges.size());
      std::map<std::size_t, Code> hist;
      for (Code v = 0; v < g.order(); ++v) ++hist[g.neighbor_codes(v).size()];
      std::map<std::size_t, Code> expected{{static_cast<std::size_t>(l - 1), static_cast<Code>(l)}};
      if (n >= 2) expected[static_cast<std::size_t>(l)] = g.order() - l;
      EXPECT_EQ(hist, expected);
      for (Code v = 0; v < g.order(); ++v) {
        EXPECT_EQ(g.is_extreme(v), g.word(v).is_constant());
        EXPECT_EQ(static_cast<std::size_t>(g.degree(v)), g.neighbor_codes(v).size());
      }
    }
  }
}

TEST(SierpinskiGraph, SymmetricAndIrreflexive) {
  const SierpinskiGraph g(3, 4);
  for (Code a = 0; a < g.order(); ++a) {
    EXPECT_FALSE(g.is_adjacent(a, a));
    for (Code b : g.neighbor_codes(a)) EXPECT_TRUE(g.is_adjacent(b, a));
  }
}

TEST(SierpinskiGraph, OneEdgeBetweenTopCells) {
  for (auto [n, l] : {std::pair{2, 3}, {3, 3}, {2, 5}, {3, 4}}) {
    const SierpinskiGraph g(n, l);
    const Code block = g.order() / static_cast<Code>(l);
    std::map<CodeEdge, int> between;
    for (auto [a, b] : g.edges()) {
      if (a / block != b / block) ++between[ordered(a / block, b / block)];
    }
    EXPECT_EQ(between.size(), static_cast<std::size_t>(l * (l - 1) / 2));
    for (auto& [cells, count] : between) EXPECT_EQ(count, 1);
  }
}

TEST(SierpinskiGraph, BridgeEdges) {
  EXPECT_EQ(bridge_edge(0, 1, 2), (WordEdge{w("01", 2), w("10", 2)}));
  EXPECT_EQ(bridge_edge(2, 0, 3), (WordEdge{w("200", 3), w("022", 3)}));
  EXPECT_THROW(bridge_edge(1, 1, 2), InvalidInput);
  const SierpinskiGraph g(3, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) {
        auto [a, b] = bridge_edge(i, j, 3);
        EXPECT_TRUE(g.is_adjacent(a, b));
        EXPECT_EQ(a[0], i);
        EXPECT_EQ(b[0], j);
      }
}

TEST(SierpinskiGraph, Atoms) {
  const SierpinskiGraph g(3, 4);
  EXPECT_EQ(g.atom_of(w("013", 4), 2).prefix, w("0", 4));
  EXPECT_EQ(g.atom_of(w("013", 4), 0).prefix, w("013", 4));
  EXPECT_EQ(g.atom_of(w("013", 4), 3).prefix.size(), 0u);
  EXPECT_THROW((void)g.atom_of(w("013", 4), 4), InvalidInput);
}

TEST(SierpinskiGraph, ContractionLevels) {
  const SierpinskiGraph g(3, 4);
  EXPECT_EQ(g.contract(1), SierpinskiGraph(2, 4));
  EXPECT_EQ(g.contract(0), g);
  EXPECT_EQ(g.contract(3).order(), 1u);
  EXPECT_EQ(g.contract(3).size(), 0u);
  EXPECT_THROW((void)g.contract(4), InvalidInput);
}

// The quotient by s-atoms, computed directly from the edge list, equals the
// smaller graph under the prefix map (a canonical relabeling).
TEST(SierpinskiGraph, ContractionIsQuotient) {
  for (auto [n, l] : {std::pair{3, 3}, {3, 4}, {2, 5}, {4, 3}}) {
    const SierpinskiGraph g(n, l);
    for (int s = 1; s < n; ++s) {
      const Code block = checked_pow(l, s);
      std::set<ref::Edge> quotient;
      for (auto [a, b] : g.edges()) {
        if (a / block != b / block) quotient.insert(ordered(a / block, b / block));
      }
      EXPECT_EQ(quotient, library_edges(g.contract(s))) << n << "," << l << " s=" << s;
    }
  }
}

TEST(SierpinskiGraph, RefinementEndpoints) {
  // u1 -- u2 of the level-1 contraction of S(3, l) lifts to u12 -- u21.
  const auto e = edge_endpoints_in_refinement(w("01", 4), w("02", 4), 4);
  EXPECT_EQ(e, (WordEdge{w("012", 4), w("021", 4)}));
  const SierpinskiGraph g(2, 3);
  const SierpinskiGraph fine(3, 3);
  for (auto [a, b] : g.edges()) {
    auto [x, y] = edge_endpoints_in_refinement(g.word(a), g.word(b), 3);
    EXPECT_TRUE(fine.is_adjacent(x, y));
    EXPECT_EQ(x.prefix(2), g.word(a));
    EXPECT_EQ(y.prefix(2), g.word(b));
    EXPECT_EQ(refine_edge_codes(a, b, 2, 3), (CodeEdge{fine.code(x), fine.code(y)}));
  }
  // Deepest intra-cell edges lift to themselves plus one digit.
  EXPECT_EQ(edge_endpoints_in_refinement(w("0", 3), w("1", 3), 3), bridge_edge(0, 1, 2));
  EXPECT_THROW(edge_endpoints_in_refinement(w("01", 4), w("20", 4), 4), InvalidInput);
}

TEST(SierpinskiGraph, ConcurrentReads) {
  const SierpinskiGraph g(4, 4, 0);
  std::vector<std::size_t> totals(4, 0);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (Code v = 0; v < g.order(); ++v) totals[t] += g.neighbor_codes(v).size();
    });
  }
  for (auto& th : threads) th.join();
  for (auto x : totals) EXPECT_EQ(x, 2 * g.size());
}
