#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sierpinski/errors.hpp"
#include "sierpinski/graph.hpp"
#include "sierpinski/steiner_pack.hpp"

namespace sierpinski {

/// A small simple undirected graph. Edges are stored in lexicographic order
/// and identified by their position in that order.
class GenericGraph {
 public:
  GenericGraph(int vertex_count, std::vector<std::pair<int, int>> edges) : vertex_count_(vertex_count) {
    if (vertex_count < 0) throw InvalidInput("negative vertex count");
    for (auto& [a, b] : edges) {
      if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) throw InvalidInput("edge endpoint out of range");
      if (a == b) throw InvalidInput("loops are not allowed");
      if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw InvalidInput("duplicate edge");
    edges_ = std::move(edges);
    incident_.resize(static_cast<std::size_t>(vertex_count));
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident_[static_cast<std::size_t>(edges_[e].first)].push_back(static_cast<int>(e));
      incident_[static_cast<std::size_t>(edges_[e].second)].push_back(static_cast<int>(e));
    }
  }

  static GenericGraph complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    }
    return GenericGraph(n, std::move(edges));
  }

  /// Vertices are word codes of S(n, ℓ).
  static GenericGraph from_sierpinski(const SierpinskiGraph& g, Code cap = SierpinskiGraph::kDefaultMaterializeCap) {
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges(cap)) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return GenericGraph(static_cast<int>(g.order()), std::move(edges));
  }

  [[nodiscard]] int vertex_count() const { return vertex_count_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  [[nodiscard]] const std::pair<int, int>& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  [[nodiscard]] const std::vector<int>& incident(int v) const { return incident_[static_cast<std::size_t>(v)]; }

  [[nodiscard]] std::optional<int> edge_id(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b});
    if (it == edges_.end() || *it != std::pair{a, b}) return std::nullopt;
    return static_cast<int>(it - edges_.begin());
  }

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> incident_;
};

/// Outcome of a verification: `ok`, or the first reason it failed.
struct Verdict {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

namespace detail {

// Tree check over arbitrary 64-bit vertex ids.
inline Verdict check_tree(std::span<const std::pair<std::uint64_t, std::uint64_t>> tree,
                          std::span<const std::uint64_t> targets) {
  std::map<std::uint64_t, std::uint64_t> parent;
  std::function<std::uint64_t(std::uint64_t)> find = [&](std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (auto [a, b] : tree) {
    if (a == b) return Verdict::fail("loop edge");
    if (!seen.insert(a < b ? std::pair{a, b} : std::pair{b, a}).second) return Verdict::fail("repeated edge");
    parent.try_emplace(a, a);
    parent.try_emplace(b, b);
  }
  for (auto [a, b] : tree) {
    const auto ra = find(a);
    const auto rb = find(b);
    if (ra == rb) return Verdict::fail("cycle");
    parent[ra] = rb;
  }
  for (auto t : targets) {
    if (!parent.count(t) && !(tree.empty() && targets.size() == 1)) return Verdict::fail("U not covered");
  }
  std::optional<std::uint64_t> root;
  for (auto& [v, _] : parent) {
    const auto r = find(v);
    if (root && *root != r) return Verdict::fail("disconnected");
    root = r;
  }
  return {};
}

inline Verdict check_packing(std::span<const std::vector<std::pair<std::uint64_t, std::uint64_t>>> trees,
                             std::span<const std::uint64_t> targets, Flavor flavor) {
  std::set<std::uint64_t> target_set(targets.begin(), targets.end());
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> edge_owner;
  std::map<std::uint64_t, std::size_t> vertex_owner;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (auto v = check_tree(trees[i], targets); !v) return Verdict::fail("tree " + std::to_string(i) + ": " + v.reason);
    std::set<std::uint64_t> verts;
    for (auto [a, b] : trees[i]) {
      const auto key = a < b ? std::pair{a, b} : std::pair{b, a};
      auto [it, fresh] = edge_owner.emplace(key, i);
      if (!fresh) {
        return Verdict::fail("trees " + std::to_string(it->second) + " and " + std::to_string(i) + " share an edge");
      }
      verts.insert(a);
      verts.insert(b);
    }
    if (flavor == Flavor::vertex) {
      for (auto v : verts) {
        if (target_set.count(v)) continue;
        auto [it, fresh] = vertex_owner.emplace(v, i);
        if (!fresh) {
          return Verdict::fail("trees " + std::to_string(it->second) + " and " + std::to_string(i) +
                               " share a vertex outside U");
        }
      }
    }
  }
  return {};
}

}  // namespace detail

/// True iff the edge set is acyclic, connected and covers every target.
inline Verdict verify_steiner_tree(const GenericGraph& g, std::span<const std::pair<int, int>> tree,
                                   std::span<const int> targets) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> t;
  for (auto [a, b] : tree) {
    if (!g.edge_id(a, b)) {
      throw InvalidInput("edge " + std::to_string(a) + "-" + std::to_string(b) + " is not in the graph");
    }
    t.emplace_back(a, b);
  }
  std::vector<std::uint64_t> u(targets.begin(), targets.end());
  return detail::check_tree(t, u);
}

/// Edge flavor: every tree is a Steiner tree and no edge is shared. Vertex
/// flavor additionally requires that trees meet only inside the target set.
inline Verdict verify_packing(const GenericGraph& g, std::span<const std::vector<std::pair<int, int>>> trees,
                              std::span<const int> targets, Flavor flavor) {
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> ts;
  for (const auto& tree : trees) {
    auto& t = ts.emplace_back();
    for (auto [a, b] : tree) {
      if (!g.edge_id(a, b)) return Verdict::fail("edge not in the graph");
      t.emplace_back(a, b);
    }
  }
  std::vector<std::uint64_t> u(targets.begin(), targets.end());
  return detail::check_packing(ts, u, flavor);
}

namespace detail {

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> word_tree_codes(const SierpinskiGraph& g,
                                                                           const std::vector<WordEdge>& tree) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& [a, b] : tree) {
    if (!g.is_adjacent(a, b)) throw InvalidInput("'" + a.str() + "'-'" + b.str() + "' is not an edge");
    out.emplace_back(a.encode(g.base()), b.encode(g.base()));
  }
  return out;
}

}  // namespace detail

inline Verdict verify_steiner_tree(const SierpinskiGraph& g, const std::vector<WordEdge>& tree,
                                   std::span<const VertexWord> targets) {
  std::vector<std::uint64_t> u;
  for (const auto& w : targets) u.push_back(g.code(w));
  return detail::check_tree(detail::word_tree_codes(g, tree), u);
}

inline Verdict verify_packing(const SierpinskiGraph& g, const std::vector<std::vector<WordEdge>>& trees,
                              std::span<const VertexWord> targets, Flavor flavor) {
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> ts;
  for (const auto& t : trees) {
    try {
      ts.push_back(detail::word_tree_codes(g, t));
    } catch (const InvalidInput& e) {
      return Verdict::fail(e.what());
    }
  }
  std::vector<std::uint64_t> u;
  for (const auto& w : targets) u.push_back(g.code(w));
  return detail::check_packing(ts, u, flavor);
}

// ---------------------------------------------------------------------------
// Exact search
// ---------------------------------------------------------------------------

struct SearchLimits {
  std::size_t max_vertices = 30;
  std::size_t max_edges = 60;
  /// Search-node budget; 0 means unlimited.
  std::uint64_t max_nodes = 0;
  /// Wall-clock budget in milliseconds; 0 means unlimited.
  double max_millis = 0;
  /// Prune with the partition (cut-counting) bound; off only for cross-checks.
  bool partition_bound = true;
};

struct ConnectivityReport {
  std::vector<int> subset;
  Flavor flavor = Flavor::edge;
  int value = 0;
  /// Edge ids of each tree in the witness packing.
  std::vector<std::vector<int>> witness;
  /// False when a budget ran out; `value` is then only a lower bound.
  bool complete = true;
  std::uint64_t nodes = 0;
  double millis = 0;
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }

// Decides "are there t disjoint S-trees in the residual edge set?" by packing
// minimal S-trees one at a time.
//
// Trees are generated in increasing order of their smallest edge at a fixed
// pivot terminal; choosing key e retires every smaller pivot edge for the rest
// of the search, so the residual mask alone identifies a subproblem and failed
// (mask, t) pairs are memoized.
class PackingSearch {
 public:
  PackingSearch(const GenericGraph& g, std::span<const int> terminals, Flavor flavor, const SearchLimits& limits)
      : g_(g), flavor_(flavor), limits_(limits), start_(std::chrono::steady_clock::now()) {
    terminals_.assign(terminals.begin(), terminals.end());
    incident_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      incident_[static_cast<std::size_t>(g.edge(static_cast<int>(e)).first)] |= bit(static_cast<int>(e));
      incident_[static_cast<std::size_t>(g.edge(static_cast<int>(e)).second)] |= bit(static_cast<int>(e));
    }
    for (int t : terminals_) terminal_mask_ |= bit(t);
    pivot_ = terminals_.front();
    for (int t : terminals_) {
      if (std::popcount(incident_[static_cast<std::size_t>(t)]) < std::popcount(incident_[static_cast<std::size_t>(pivot_)])) {
        pivot_ = t;
      }
    }
    full_ = g.edge_count() == 64 ? ~Mask{0} : bit(static_cast<int>(g.edge_count())) - 1;
  }

  [[nodiscard]] Mask full_mask() const { return full_; }
  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }
  [[nodiscard]] bool aborted() const { return aborted_; }

  /// Upper bound on the number of trees packable in `mask`.
  [[nodiscard]] int upper_bound(Mask mask) const {
    int bound = std::numeric_limits<int>::max();
    for (int t : terminals_) bound = std::min(bound, std::popcount(mask & incident_[static_cast<std::size_t>(t)]));
    if (bound == 0 || !terminals_connected(mask)) return 0;
    return limits_.partition_bound ? std::min(bound, partition_bound(mask)) : bound;
  }

  bool feasible(Mask mask, int count, std::vector<Mask>& chosen) {
    if (count == 0) return true;
    if (!tick()) return false;
    if (failed_.count(key(mask, count))) return false;
    if (upper_bound(mask) < count) {
      failed_.insert(key(mask, count));
      return false;
    }
    const Mask pivot_edges = mask & incident_[static_cast<std::size_t>(pivot_)];
    Mask lower = 0;
    int remaining = std::popcount(pivot_edges);
    for (Mask rest = pivot_edges; rest && remaining >= count; rest &= rest - 1, --remaining) {
      const int e = std::countr_zero(rest);
      const Mask residual = mask & ~lower;
      lower |= bit(e);
      bool found = false;
      enumerate_trees(residual, e, count, [&](Mask tree, Mask verts) {
        Mask next = residual & ~tree & ~lower;
        if (flavor_ == Flavor::vertex) {
          for (Mask inner = verts & ~terminal_mask_; inner; inner &= inner - 1) {
            next &= ~incident_[static_cast<std::size_t>(std::countr_zero(inner))];
          }
        }
        chosen.push_back(tree);
        if (feasible(next, count - 1, chosen)) {
          found = true;
          return true;
        }
        chosen.pop_back();
        return aborted_;
      });
      if (found) return true;
      if (aborted_) return false;
    }
    if (!aborted_) failed_.insert(key(mask, count));
    return false;
  }

 private:
  using Key = std::pair<Mask, int>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<Mask>{}(k.first * 0x9E3779B97F4A7C15ULL + static_cast<Mask>(k.second)); }
  };

  static Key key(Mask m, int t) { return {m, t}; }

  bool tick() {
    ++nodes_;
    if (limits_.max_nodes && nodes_ > limits_.max_nodes) aborted_ = true;
    if (limits_.max_millis > 0 && (nodes_ & 1023) == 0) {
      const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > limits_.max_millis) aborted_ = true;
    }
    return !aborted_;
  }

  [[nodiscard]] Mask reach(Mask mask, Mask from) const {
    Mask seen = from;
    Mask frontier = from;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      for (Mask es = mask & incident_[static_cast<std::size_t>(v)]; es; es &= es - 1) {
        const auto& [a, b] = g_.edge(std::countr_zero(es));
        const int w = a == v ? b : a;
        if (!(seen & bit(w))) {
          seen |= bit(w);
          frontier |= bit(w);
        }
      }
    }
    return seen;
  }

  [[nodiscard]] bool terminals_connected(Mask mask) const {
    return (reach(mask, bit(terminals_.front())) & terminal_mask_) == terminal_mask_;
  }

  // Trees crossing a partition whose q parts each hold a terminal use at least
  // q - 1 crossing edges. Parts start as multi-source BFS regions and are
  // improved by single-vertex moves and by merging parts.
  [[nodiscard]] int partition_bound(Mask mask) const {
    const int n = g_.vertex_count();
    std::vector<int> part(static_cast<std::size_t>(n), -1);
    std::vector<int> queue;
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
      part[static_cast<std::size_t>(terminals_[i])] = static_cast<int>(i);
      queue.push_back(terminals_[i]);
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int v = queue[h];
      for (Mask es = mask & incident_[static_cast<std::size_t>(v)]; es; es &= es - 1) {
        const auto& [a, b] = g_.edge(std::countr_zero(es));
        const int w = a == v ? b : a;
        if (part[static_cast<std::size_t>(w)] < 0) {
          part[static_cast<std::size_t>(w)] = part[static_cast<std::size_t>(v)];
          queue.push_back(w);
        }
      }
    }
    auto crossing = [&]() {
      int cross = 0;
      for (Mask es = mask; es; es &= es - 1) {
        const auto& [a, b] = g_.edge(std::countr_zero(es));
        if (part[static_cast<std::size_t>(a)] != part[static_cast<std::size_t>(b)]) ++cross;
      }
      return cross;
    };
    // Local moves of non-terminal vertices to the part holding most of their neighbours.
    for (int round = 0; round < 8; ++round) {
      bool moved = false;
      for (int v = 0; v < n; ++v) {
        if ((terminal_mask_ & bit(v)) || part[static_cast<std::size_t>(v)] < 0) continue;
        std::map<int, int> votes;
        for (Mask es = mask & incident_[static_cast<std::size_t>(v)]; es; es &= es - 1) {
          const auto& [a, b] = g_.edge(std::countr_zero(es));
          ++votes[part[static_cast<std::size_t>(a == v ? b : a)]];
        }
        int best = part[static_cast<std::size_t>(v)];
        for (auto [p, c] : votes) {
          if (c > votes[best]) best = p;
        }
        if (best != part[static_cast<std::size_t>(v)]) {
          part[static_cast<std::size_t>(v)] = best;
          moved = true;
        }
      }
      if (!moved) break;
    }
    int parts = static_cast<int>(terminals_.size());
    int cross = crossing();
    int bound = parts > 1 ? cross / (parts - 1) : std::numeric_limits<int>::max();
    // Greedy merging of part pairs while the bound improves.
    while (parts > 2) {
      int best_bound = bound;
      std::pair<int, int> best_pair{-1, -1};
      std::set<int> alive;
      for (int v = 0; v < n; ++v) {
        if (part[static_cast<std::size_t>(v)] >= 0) alive.insert(part[static_cast<std::size_t>(v)]);
      }
      for (int p : alive) {
        for (int q : alive) {
          if (q <= p) continue;
          int between = 0;
          for (Mask es = mask; es; es &= es - 1) {
            const auto& [a, b] = g_.edge(std::countr_zero(es));
            const int pa = part[static_cast<std::size_t>(a)];
            const int pb = part[static_cast<std::size_t>(b)];
            if ((pa == p && pb == q) || (pa == q && pb == p)) ++between;
          }
          const int candidate = (cross - between) / (parts - 2);
          if (candidate < best_bound) {
            best_bound = candidate;
            best_pair = {p, q};
          }
        }
      }
      if (best_pair.first < 0) break;
      int between = 0;
      for (Mask es = mask; es; es &= es - 1) {
        const auto& [a, b] = g_.edge(std::countr_zero(es));
        const int pa = part[static_cast<std::size_t>(a)];
        const int pb = part[static_cast<std::size_t>(b)];
        if ((pa == best_pair.first && pb == best_pair.second) || (pa == best_pair.second && pb == best_pair.first)) {
          ++between;
        }
      }
      for (auto& p : part) {
        if (p == best_pair.second) p = best_pair.first;
      }
      cross -= between;
      --parts;
      bound = best_bound;
    }
    return bound;
  }

  // Enumerates minimal S-trees in `mask` that contain pivot edge `key_edge`,
  // calling `emit(edges, vertices)` until it returns true. Terminal degrees
  // keep enough residual edges for the remaining count - 1 trees.
  template <class Emit>
  void enumerate_trees(Mask mask, int key_edge, int count, Emit&& emit) {
    const auto& [a, b] = g_.edge(key_edge);
    std::vector<int> budget(static_cast<std::size_t>(g_.vertex_count()), 1 << 20);
    for (int t : terminals_) {
      budget[static_cast<std::size_t>(t)] = std::popcount(mask & incident_[static_cast<std::size_t>(t)]) - (count - 1);
    }
    std::vector<int> degree(static_cast<std::size_t>(g_.vertex_count()), 0);
    if (budget[static_cast<std::size_t>(a)] < 1 || budget[static_cast<std::size_t>(b)] < 1) return;
    degree[static_cast<std::size_t>(a)] = degree[static_cast<std::size_t>(b)] = 1;
    grow(mask, bit(key_edge), bit(a) | bit(b), 0, degree, budget, emit);
  }

  template <class Emit>
  bool grow(Mask mask, Mask tree, Mask verts, Mask forbidden, std::vector<int>& degree, const std::vector<int>& budget,
            Emit& emit) {
    if (!tick()) return true;
    const Mask allowed = mask & ~forbidden & ~tree;
    if ((verts & terminal_mask_) == terminal_mask_) {
      for (Mask vs = verts & ~terminal_mask_; vs; vs &= vs - 1) {
        if (degree[static_cast<std::size_t>(std::countr_zero(vs))] < 2) return false;
      }
      return emit(tree, verts);
    }
    // Every terminal must stay reachable through allowed edges.
    if ((reach(allowed | tree, verts) & terminal_mask_) != terminal_mask_) return false;

    int pick = -1;
    for (Mask vs = verts; vs; vs &= vs - 1) {
      const int v = std::countr_zero(vs);
      Mask out = 0;
      for (Mask es = allowed & incident_[static_cast<std::size_t>(v)]; es; es &= es - 1) {
        const int e = std::countr_zero(es);
        const auto& [x, y] = g_.edge(e);
        const int w = x == v ? y : x;
        if (!(verts & bit(w))) out |= bit(e);
      }
      // A non-terminal leaf that can no longer grow stays a leaf.
      if (!(terminal_mask_ & bit(v)) && degree[static_cast<std::size_t>(v)] == 1 && !out) return false;
      if (out) {
        const int e = std::countr_zero(out);
        if (pick < 0 || e < pick) pick = e;
      }
    }
    if (pick < 0) return false;
    const auto& [x, y] = g_.edge(pick);
    const int inside = (verts & bit(x)) ? x : y;
    const int outside = inside == x ? y : x;
    const bool can_take = degree[static_cast<std::size_t>(inside)] < budget[static_cast<std::size_t>(inside)] &&
                          budget[static_cast<std::size_t>(outside)] >= 1;
    if (can_take) {
      ++degree[static_cast<std::size_t>(inside)];
      ++degree[static_cast<std::size_t>(outside)];
      const bool stop = grow(mask, tree | bit(pick), verts | bit(outside), forbidden, degree, budget, emit);
      --degree[static_cast<std::size_t>(inside)];
      --degree[static_cast<std::size_t>(outside)];
      if (stop) return true;
    }
    return grow(mask, tree, verts, forbidden | bit(pick), degree, budget, emit);
  }

  const GenericGraph& g_;
  Flavor flavor_;
  SearchLimits limits_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int> terminals_;
  std::vector<Mask> incident_;
  Mask terminal_mask_ = 0;
  Mask full_ = 0;
  int pivot_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::unordered_set<Key, KeyHash> failed_;
};

}  // namespace detail

/// Exact λ_G(S) (edge flavor) or κ_G(S) (vertex flavor) with a witness
/// packing, by exhaustive search. Refuses graphs above the size caps; if a
/// budget runs out the best packing found so far is returned with
/// `complete = false`.
inline ConnectivityReport max_disjoint_trees(const GenericGraph& g, std::span<const int> subset, Flavor flavor,
                                             const SearchLimits& limits = {}) {
  if (static_cast<std::size_t>(g.vertex_count()) > limits.max_vertices || g.edge_count() > limits.max_edges ||
      g.vertex_count() > 64 || g.edge_count() > 64) {
    throw SizeCapExceeded("oracle instance has " + std::to_string(g.vertex_count()) + " vertices and " +
                          std::to_string(g.edge_count()) + " edges, above the caps (" +
                          std::to_string(limits.max_vertices) + ", " + std::to_string(limits.max_edges) + ")");
  }
  std::vector<int> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  if (s.size() < 2) throw InvalidInput("oracle needs |S| >= 2");
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidInput("repeated vertex in S");
  for (int v : s) {
    if (v < 0 || v >= g.vertex_count()) throw InvalidInput("S vertex out of range");
  }

  const auto start = std::chrono::steady_clock::now();
  detail::PackingSearch search(g, s, flavor, limits);
  ConnectivityReport report;
  report.subset = s;
  report.flavor = flavor;
  const int ceiling = search.upper_bound(search.full_mask());
  std::vector<detail::Mask> best;
  for (int t = 1; t <= ceiling; ++t) {
    std::vector<detail::Mask> chosen;
    if (!search.feasible(search.full_mask(), t, chosen)) break;
    best = chosen;
  }
  report.value = static_cast<int>(best.size());
  for (auto m : best) {
    auto& ids = report.witness.emplace_back();
    for (; m; m &= m - 1) ids.push_back(std::countr_zero(m));
  }
  report.complete = !search.aborted();
  report.nodes = search.nodes();
  report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

struct ConnectivitySweep {
  int k = 0;
  Flavor flavor = Flavor::edge;
  int value = 0;
  /// Every subset was evaluated and every search completed.
  bool complete = true;
  std::vector<ConnectivityReport> reports;
};

/// Visits k-subsets of {0..n-1} in lexicographic order.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  if (k > n || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
  }
}

/// λ_k(G) or κ_k(G): the minimum of max_disjoint_trees over k-subsets. When
/// `subsets` is given only those are evaluated and the result is flagged as
/// incomplete (an upper bound). Subsets are searched on `jobs` threads; the
/// reports keep subset order.
inline ConnectivitySweep connectivity_k(const GenericGraph& g, int k, Flavor flavor, const SearchLimits& limits = {},
                                        unsigned jobs = 0, std::optional<std::vector<std::vector<int>>> subsets = {}) {
  if (k < 2 || k > g.vertex_count()) throw InvalidInput("k must lie in [2, |V|]");
  ConnectivitySweep sweep;
  sweep.k = k;
  sweep.flavor = flavor;
  std::vector<std::vector<int>> work;
  if (subsets) {
    work = std::move(*subsets);
    sweep.complete = false;
  } else {
    for_each_subset(g.vertex_count(), k, [&](const std::vector<int>& s) { work.push_back(s); });
  }
  sweep.reports.resize(work.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, work.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&]() {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      try {
        sweep.reports[i] = max_disjoint_trees(g, work[i], flavor, limits);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  sweep.value = std::numeric_limits<int>::max();
  for (const auto& r : sweep.reports) {
    sweep.value = std::min(sweep.value, r.value);
    sweep.complete = sweep.complete && r.complete;
  }
  if (sweep.reports.empty()) sweep.value = 0;
  return sweep;
}

}  // namespace sierpinski
