// Packs Steiner trees for three corners of S(3,4), checks them, and asks the
// exact search whether more trees would fit.

#include <iostream>

#include "sierpinski/sierpinski.hpp"

int main() {
  using namespace sierpinski;
  const SierpinskiGraph g(3, 4);
  const std::vector<VertexWord> targets{VertexWord::parse("000", 4), VertexWord::parse("111", 4),
                                        VertexWord::parse("222", 4)};

  const auto set = construct_steiner_trees(g, targets);
  std::cout << "constructed " << set.trees.size() << " trees\n";
  for (std::size_t i = 0; i < set.trees.size(); ++i) {
    std::cout << "  tree " << i << ":";
    for (const auto& [a, b] : set.trees[i]) std::cout << ' ' << a.str() << '-' << b.str();
    std::cout << '\n';
  }
  const auto check = verify_packing(g, set.trees, targets, Flavor::vertex);
  std::cout << "internally disjoint: " << (check ? "yes" : check.reason) << '\n';

  // S(2,4) is small enough for the exhaustive search.
  const SierpinskiGraph small(2, 4);
  const auto generic = GenericGraph::from_sierpinski(small);
  std::vector<int> subset;
  for (const auto& w : worst_case_subset(2, 4, 3)) subset.push_back(static_cast<int>(small.code(w)));
  const auto report = max_disjoint_trees(generic, subset, Flavor::edge);
  std::cout << "exact maximum on S(2,4) for {00,11,22}: " << report.value << '\n';
  return check ? 0 : 1;
}
