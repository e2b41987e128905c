#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sierpinski/errors.hpp"
#include "sierpinski/graph.hpp"
#include "sierpinski/word.hpp"

namespace sierpinski {

/// Edge-disjoint Hamiltonian paths over a ground set {0, ..., N-1}, plus the
/// leftover matching when the set comes from an odd complete graph.
struct HamPathSet {
  std::uint64_t ground_size = 0;
  std::vector<std::vector<Code>> paths;
  std::vector<CodeEdge> matching;
};

using EndpointPair = std::pair<int, int>;

/// Checks that every path is Hamiltonian on the ground set, that consecutive
/// vertices are joined by an edge accepted by `is_edge`, that paths (and the
/// matching) are pairwise edge-disjoint, and that matching edges are pairwise
/// vertex-disjoint. Returns a description of the first violation.
inline std::optional<std::string> check_path_set(const HamPathSet& set,
                                                 const std::function<bool(Code, Code)>& is_edge) {
  std::set<CodeEdge> used;
  for (std::size_t p = 0; p < set.paths.size(); ++p) {
    const auto& path = set.paths[p];
    if (path.size() != set.ground_size) {
      return "path " + std::to_string(p) + " visits " + std::to_string(path.size()) + " of " +
             std::to_string(set.ground_size) + " vertices";
    }
    std::vector<char> seen(set.ground_size, 0);
    for (Code v : path) {
      if (v >= set.ground_size || seen[v]) return "path " + std::to_string(p) + " repeats or leaves the ground set";
      seen[v] = 1;
    }
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      if (!is_edge(path[j], path[j + 1])) {
        return "path " + std::to_string(p) + " steps along a non-edge " + std::to_string(path[j]) + "-" +
               std::to_string(path[j + 1]);
      }
      if (!used.insert(ordered(path[j], path[j + 1])).second) {
        return "edge " + std::to_string(path[j]) + "-" + std::to_string(path[j + 1]) + " used twice";
      }
    }
  }
  std::set<Code> matched;
  for (auto [a, b] : set.matching) {
    if (!is_edge(a, b)) return "matching contains a non-edge";
    if (!used.insert(ordered(a, b)).second) return "matching edge also lies on a path";
    if (!matched.insert(a).second || !matched.insert(b).second) return "matching edges share a vertex";
  }
  return std::nullopt;
}

namespace detail {

inline void require_complete_partition(const HamPathSet& set) {
  const auto n = set.ground_size;
  auto err = check_path_set(set, [n](Code a, Code b) { return a != b && a < n && b < n; });
  std::size_t edges = set.matching.size();
  for (const auto& p : set.paths) edges += p.size() - 1;
  if (!err && edges != n * (n - 1) / 2) err = "edge count does not match C(N,2)";
  if (err) throw ConstructionFailure("K_" + std::to_string(n) + " decomposition invalid: " + *err);
}

}  // namespace detail

/// Decomposes K_N into floor(N/2) edge-disjoint Hamiltonian paths, plus a
/// perfect-size leftover matching of floor(N/2) edges when N is odd. All path
/// endpoints are distinct.
///
/// Even N = 2m: the zigzag i, i+1, i-1, i+2, i-2, ... (mod 2m) for i < m,
/// which ends at i+m. Odd N = 2m+1: each zigzag closed through the extra
/// vertex 2m is a Hamiltonian cycle; cutting every cycle at its middle edge
/// leaves a path, and the cut edges are pairwise disjoint.
inline HamPathSet decompose_complete(int n) {
  if (n < 2) throw InvalidInput("decompose_complete needs N >= 2");
  const int m = n / 2;
  const Code mod = static_cast<Code>(2 * m);
  auto zigzag = [&](int i) {
    std::vector<Code> z;
    z.reserve(static_cast<std::size_t>(2 * m));
    for (int a = 0; a < m; ++a) {
      z.push_back((static_cast<Code>(i) + mod - static_cast<Code>(a) % mod) % mod);
      z.push_back((static_cast<Code>(i + a + 1)) % mod);
    }
    return z;
  };

  HamPathSet set;
  set.ground_size = static_cast<std::uint64_t>(n);
  for (int i = 0; i < m; ++i) {
    auto z = zigzag(i);
    if (n % 2 == 0) {
      set.paths.push_back(std::move(z));
      continue;
    }
    std::vector<Code> cycle;
    cycle.reserve(z.size() + 1);
    cycle.push_back(static_cast<Code>(2 * m));
    cycle.insert(cycle.end(), z.begin(), z.end());
    const auto mid = static_cast<std::size_t>(m);
    std::vector<Code> path(cycle.begin() + static_cast<std::ptrdiff_t>(mid) + 1, cycle.end());
    path.insert(path.end(), cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(mid) + 1);
    set.matching.push_back(ordered(cycle[mid], cycle[mid + 1]));
    set.paths.push_back(std::move(path));
  }
  detail::require_complete_partition(set);
  return set;
}

/// s edge-disjoint Hamiltonian paths of K_N where path i runs from
/// pairs[i].first to pairs[i].second. The canonical decomposition is
/// relabeled: canonical endpoints of path i map onto pairs[i], and the
/// remaining vertices map in ascending order.
inline HamPathSet constrained_paths(int n, std::span<const EndpointPair> pairs) {
  if (n < 2) throw InvalidInput("constrained_paths needs N >= 2");
  if (pairs.size() > static_cast<std::size_t>(n / 2)) {
    throw InvalidInput(std::to_string(pairs.size()) + " endpoint pairs exceed floor(N/2) = " +
                       std::to_string(n / 2));
  }
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidInput("endpoint outside the ground set");
    if (a == b) throw InvalidInput("endpoint pair repeats a vertex");
    if (taken[static_cast<std::size_t>(a)] || taken[static_cast<std::size_t>(b)]) {
      throw InvalidInput("endpoint pairs are not pairwise disjoint");
    }
    taken[static_cast<std::size_t>(a)] = taken[static_cast<std::size_t>(b)] = 1;
  }

  const auto canonical = decompose_complete(n);
  std::vector<Code> relabel(static_cast<std::size_t>(n), 0);
  std::vector<char> mapped(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = canonical.paths[i];
    relabel[p.front()] = static_cast<Code>(pairs[i].first);
    relabel[p.back()] = static_cast<Code>(pairs[i].second);
    mapped[p.front()] = mapped[p.back()] = 1;
  }
  std::size_t next_target = 0;
  for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
    if (mapped[v]) continue;
    while (taken[next_target]) ++next_target;
    relabel[v] = next_target;
    taken[next_target] = 1;
  }

  HamPathSet set;
  set.ground_size = static_cast<std::uint64_t>(n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::vector<Code> path;
    path.reserve(canonical.paths[i].size());
    for (Code v : canonical.paths[i]) path.push_back(relabel[v]);
    set.paths.push_back(std::move(path));
  }
  return set;
}

inline HamPathSet constrained_paths(int n, const std::vector<EndpointPair>& pairs) {
  return constrained_paths(n, std::span<const EndpointPair>(pairs));
}

namespace detail {

// Paths of S(depth, base) (suffix codes) from <a..a> to <b..b> for each
// prescribed pair of extreme indices.
inline std::vector<std::vector<Code>> sierpinski_paths(int depth, int base,
                                                       const std::vector<EndpointPair>& ends) {
  const auto top = constrained_paths(base, ends);
  if (depth == 1) return top.paths;

  const Code cell_size = checked_pow(base, depth - 1);
  // Per cell, the entry/exit extreme indices of every path through it.
  std::vector<std::vector<EndpointPair>> cell_ends(static_cast<std::size_t>(base),
                                                   std::vector<EndpointPair>(ends.size()));
  for (std::size_t p = 0; p < ends.size(); ++p) {
    const auto& cells = top.paths[p];
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const int here = static_cast<int>(cells[j]);
      const int entry = j == 0 ? here : static_cast<int>(cells[j - 1]);
      const int exit = j + 1 == cells.size() ? here : static_cast<int>(cells[j + 1]);
      cell_ends[static_cast<std::size_t>(here)][p] = {entry, exit};
    }
  }
  std::vector<std::vector<std::vector<Code>>> inner(static_cast<std::size_t>(base));
  for (int c = 0; c < base; ++c) {
    inner[static_cast<std::size_t>(c)] = sierpinski_paths(depth - 1, base, cell_ends[static_cast<std::size_t>(c)]);
  }
  std::vector<std::vector<Code>> out(ends.size());
  for (std::size_t p = 0; p < ends.size(); ++p) {
    for (Code c : top.paths[p]) {
      for (Code v : inner[c][p]) out[p].push_back(c * cell_size + v);
    }
  }
  return out;
}

}  // namespace detail

/// floor(ℓ/2) edge-disjoint Hamiltonian paths of S(n, ℓ) whose endpoints are
/// extreme vertices. Vertices are word codes.
///
/// The top level follows the canonical paths of K_ℓ over the cells; inside
/// each cell the path enters and leaves through extreme vertices of the
/// sub-cell (the bridge ends), so the same problem recurs one level down with
/// the neighbouring cells as prescribed endpoint pairs.
inline HamPathSet decompose_sierpinski(int depth, int base) {
  const SierpinskiGraph g(depth, base, 0);
  const auto canonical = decompose_complete(base);
  std::vector<EndpointPair> ends;
  for (int p = 0; p < base / 2; ++p) {
    ends.emplace_back(static_cast<int>(canonical.paths[static_cast<std::size_t>(p)].front()),
                      static_cast<int>(canonical.paths[static_cast<std::size_t>(p)].back()));
  }
  HamPathSet set;
  set.ground_size = g.order();
  set.paths = detail::sierpinski_paths(depth, base, ends);
  return set;
}

}  // namespace sierpinski
