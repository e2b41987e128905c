#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sierpinski/errors.hpp"
#include "sierpinski/graph.hpp"
#include "sierpinski/ham_decomp.hpp"
#include "sierpinski/word.hpp"

namespace sierpinski {

enum class Flavor { edge, vertex };
enum class ConnectorMode { paper, minimal };

inline const char* to_string(Flavor f) { return f == Flavor::edge ? "edge" : "vertex"; }
inline const char* to_string(ConnectorMode m) { return m == ConnectorMode::paper ? "paper" : "minimal"; }

inline int ceil_half(int k) { return (k + 1) / 2; }

// ---------------------------------------------------------------------------
// Closed-form values
// ---------------------------------------------------------------------------

struct ConnectivityValue {
  int value = 0;
  /// Set when only an upper bound is known (vertex flavor with k > ℓ).
  bool upper_bound_only = false;
};

/// κ_k and λ_k of S(n, ℓ): ℓ - ceil(k/2) for 3 <= k <= ℓ; for k > ℓ the edge
/// value is floor(ℓ/2), which is only an upper bound for the vertex flavor.
inline ConnectivityValue connectivity_value(int depth, int base, int k, Flavor flavor) {
  const SierpinskiGraph g(depth, base, 0);
  if (k < 3) throw InvalidInput("k must be >= 3 (k = 2 is the classical connectivity, see the oracle)");
  if (static_cast<Code>(k) > g.order()) throw InvalidInput("k exceeds the number of vertices");
  if (k <= base) return {base - ceil_half(k), false};
  return {base / 2, flavor == Flavor::vertex};
}

// ---------------------------------------------------------------------------
// Target-set bookkeeping
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<VertexWord> validated_targets(const SierpinskiGraph& g, std::span<const VertexWord> targets) {
  std::vector<VertexWord> sorted(targets.begin(), targets.end());
  for (const auto& w : sorted) g.validate(w);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("target set contains a repeated vertex");
  }
  return sorted;
}

inline std::size_t common_prefix_length(const std::vector<VertexWord>& sorted) {
  // For a sorted list the first and last word bound every common prefix.
  const auto& a = sorted.front();
  const auto& b = sorted.back();
  std::size_t len = 0;
  while (len < a.size() && a[len] == b[len]) ++len;
  return len;
}

}  // namespace detail

/// The smallest atom containing every target: level s' is the least s for
/// which G_s has exactly one labeled vertex.
inline AtomId reduce_to_minimal_atom(const SierpinskiGraph& g, std::span<const VertexWord> targets) {
  if (targets.size() < 2) throw InvalidInput("need at least two target vertices");
  const auto sorted = detail::validated_targets(g, targets);
  const auto lcp = detail::common_prefix_length(sorted);
  return AtomId{g.depth() - static_cast<int>(lcp), sorted.front().prefix(lcp)};
}

/// Labeled vertices of every contraction level and the label sets W^u.
///
/// Level s holds U^s, the length-(n-s) prefixes of the targets. For a labeled
/// vertex u of G_s (s >= 1) the set W^u lists its labeled children in G_{s-1}.
class LabeledAtomTree {
 public:
  LabeledAtomTree(const SierpinskiGraph& g, std::span<const VertexWord> targets)
      : depth_(g.depth()), k_(static_cast<int>(targets.size())) {
    if (targets.empty()) throw InvalidInput("empty target set");
    const auto sorted = detail::validated_targets(g, targets);
    root_ = reduce_to_minimal_atom(g, sorted);
    levels_.resize(static_cast<std::size_t>(depth_) + 1);
    for (int s = 0; s <= depth_; ++s) {
      std::set<VertexWord> prefixes;
      for (const auto& w : sorted) prefixes.insert(w.prefix(static_cast<std::size_t>(depth_ - s)));
      levels_[static_cast<std::size_t>(s)].assign(prefixes.begin(), prefixes.end());
    }
    for (int s = 1; s <= depth_; ++s) {
      for (const auto& child : levels_[static_cast<std::size_t>(s - 1)]) {
        children_[child.prefix(child.size() - 1)].push_back(child);
      }
    }
  }

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] const AtomId& root() const { return root_; }
  /// U^s as sorted words of length n - s.
  [[nodiscard]] const std::vector<VertexWord>& labeled(int level) const {
    return levels_.at(static_cast<std::size_t>(level));
  }
  [[nodiscard]] bool is_labeled(const VertexWord& prefix) const {
    const auto& lv = levels_.at(static_cast<std::size_t>(depth_) - prefix.size());
    return std::binary_search(lv.begin(), lv.end(), prefix);
  }
  /// W^u for a labeled prefix u (empty for unlabeled or full-length words).
  [[nodiscard]] const std::vector<VertexWord>& label_set(const VertexWord& prefix) const {
    static const std::vector<VertexWord> kEmpty;
    auto it = children_.find(prefix);
    return it == children_.end() ? kEmpty : it->second;
  }

  /// Largest value of sum(|W^x| - 1) over a chain of labeled atoms from the
  /// root atom down to a target. The chain bound sum |W^{x_i}| <= k + p - 1
  /// holds for every chain iff this is <= k - 1.
  [[nodiscard]] int max_chain_excess() const {
    int best = 0;
    for (const auto& target : levels_.front()) {
      int excess = 0;
      for (std::size_t len = root_.prefix.size(); len < target.size(); ++len) {
        excess += static_cast<int>(label_set(target.prefix(len)).size()) - 1;
      }
      best = std::max(best, excess);
    }
    return best;
  }

 private:
  int depth_;
  int k_;
  AtomId root_;
  std::vector<std::vector<VertexWord>> levels_;
  std::map<VertexWord, std::vector<VertexWord>> children_;
};

// ---------------------------------------------------------------------------
// Local constructions inside one H^u ≅ K_ℓ (vertices are child digits)
// ---------------------------------------------------------------------------

using LocalEdge = std::pair<int, int>;
using LocalTree = std::vector<LocalEdge>;

inline LocalEdge local_edge(int a, int b) { return a < b ? LocalEdge{a, b} : LocalEdge{b, a}; }

inline LocalTree star(int center, std::span<const int> leaves) {
  LocalTree t;
  for (int w : leaves) t.push_back(local_edge(center, w));
  std::sort(t.begin(), t.end());
  return t;
}

namespace detail {

inline void require_sorted_distinct_digits(std::span<const int> digits, int base, const char* what) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= base) throw InvalidInput(std::string(what) + ": digit out of range");
    if (i > 0 && digits[i] <= digits[i - 1]) throw InvalidInput(std::string(what) + ": digits not sorted/distinct");
  }
}

inline std::vector<int> complement(std::span<const int> sorted, int base) {
  std::vector<int> out;
  for (int x = 0; x < base; ++x) {
    if (!std::binary_search(sorted.begin(), sorted.end(), x)) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// The c = ℓ - ceil(k/2) trees of the root K_ℓ over the labeled set W.
///
/// With |W| < ceil(k/2) every tree is a star from a distinct vertex outside W.
/// Otherwise the ℓ - |W| outside vertices each give a star, followed by
/// |W| - ceil(k/2) edge-disjoint Hamiltonian paths of K_ℓ[W].
inline std::vector<LocalTree> base_case_trees(std::span<const int> labeled, int k, int base) {
  if (labeled.size() < 2) throw InvalidInput("base case needs |W| >= 2");
  if (static_cast<int>(labeled.size()) > k || k > base) throw InvalidInput("base case needs |W| <= k <= l");
  detail::require_sorted_distinct_digits(labeled, base, "base case label set");
  const int w = static_cast<int>(labeled.size());
  const int c = base - ceil_half(k);
  const auto outside = detail::complement(labeled, base);

  std::vector<LocalTree> trees;
  if (w < ceil_half(k)) {
    for (int i = 0; i < c; ++i) trees.push_back(star(outside[static_cast<std::size_t>(i)], labeled));
    return trees;
  }
  for (int x : outside) trees.push_back(star(x, labeled));
  const int paths = w - ceil_half(k);
  if (paths > 0) {
    const auto decomposition = decompose_complete(w);
    for (int p = 0; p < paths; ++p) {
      LocalTree t;
      const auto& path = decomposition.paths[static_cast<std::size_t>(p)];
      for (std::size_t j = 0; j + 1 < path.size(); ++j) {
        t.push_back(local_edge(labeled[path[j]], labeled[path[j + 1]]));
      }
      std::sort(t.begin(), t.end());
      trees.push_back(std::move(t));
    }
  }
  return trees;
}

/// How tree F_i meets the labeled atom u, by its attachment vertices V_{u,i}.
enum class AttachmentType : int {
  one_inside = 1,   // |V| = 1, inside W^u
  one_outside = 2,  // |V| = 1, outside W^u
  two_inside = 3,   // |V| = 2, both inside
  two_outside = 4,  // |V| = 2, both outside
  split = 5,        // |V| = 2, exactly one inside
};

/// Attachment census of one labeled atom u of G_{s+1}.
struct AttachmentCensus {
  int base = 0;
  int k = 0;
  std::vector<int> labeled;                   // W^u
  std::vector<std::vector<int>> attachments;  // V_{u,i}, one entry per tree
  std::vector<AttachmentType> types;
  std::array<int, 5> counts{};                // n_1(u) ... n_5(u)
  std::vector<int> residual;                  // R(u)

  [[nodiscard]] int n(int type) const { return counts[static_cast<std::size_t>(type - 1)]; }

  [[nodiscard]] std::string describe() const {
    std::ostringstream os;
    os << "W^u={";
    for (std::size_t i = 0; i < labeled.size(); ++i) os << (i ? "," : "") << labeled[i];
    os << "} R(u)={";
    for (std::size_t i = 0; i < residual.size(); ++i) os << (i ? "," : "") << residual[i];
    os << "} n=(";
    for (std::size_t i = 0; i < counts.size(); ++i) os << (i ? "," : "") << counts[i];
    os << ") V=[";
    for (std::size_t i = 0; i < attachments.size(); ++i) {
      os << (i ? " " : "") << "{";
      for (std::size_t j = 0; j < attachments[i].size(); ++j) os << (j ? "," : "") << attachments[i][j];
      os << "}";
    }
    os << "] k=" << k << " l=" << base;
    return os.str();
  }
};

/// Type 1/2 for a single attachment (inside/outside W^u); 3/4/5 for two
/// attachments with both/none/one inside W^u.
inline AttachmentType classify_type(const AttachmentCensus& census, std::size_t tree) {
  const auto& v = census.attachments.at(tree);
  auto inside = [&](int x) { return std::binary_search(census.labeled.begin(), census.labeled.end(), x); };
  if (v.size() == 1) return inside(v[0]) ? AttachmentType::one_inside : AttachmentType::one_outside;
  if (v.size() == 2) {
    const int hits = (inside(v[0]) ? 1 : 0) + (inside(v[1]) ? 1 : 0);
    if (hits == 2) return AttachmentType::two_inside;
    if (hits == 0) return AttachmentType::two_outside;
    return AttachmentType::split;
  }
  throw ConstructionFailure("tree " + std::to_string(tree) + " has " + std::to_string(v.size()) +
                            " attachment vertices at a labeled atom (degree bound broken upstream): " +
                            census.describe());
}

/// Builds the census of a labeled atom: types, counts and the residual set
/// R(u) = V(H^u) - W^u - union of all V_{u,i}.
inline AttachmentCensus make_census(int base, int k, std::vector<int> labeled,
                                    std::vector<std::vector<int>> attachments) {
  AttachmentCensus census;
  census.base = base;
  census.k = k;
  for (auto& v : attachments) std::sort(v.begin(), v.end());
  std::sort(labeled.begin(), labeled.end());
  detail::require_sorted_distinct_digits(labeled, base, "label set");
  census.labeled = std::move(labeled);
  census.attachments = std::move(attachments);
  std::vector<char> used(static_cast<std::size_t>(base), 0);
  for (int w : census.labeled) used[static_cast<std::size_t>(w)] = 1;
  for (std::size_t i = 0; i < census.attachments.size(); ++i) {
    const auto t = classify_type(census, i);
    census.types.push_back(t);
    ++census.counts[static_cast<std::size_t>(static_cast<int>(t) - 1)];
    for (int x : census.attachments[i]) used[static_cast<std::size_t>(x)] = 1;
  }
  for (int x = 0; x < base; ++x) {
    if (!used[static_cast<std::size_t>(x)]) census.residual.push_back(x);
  }
  return census;
}

/// Counters for the runtime checks made during a construction. A violation
/// also raises ConstructionFailure, so a finished construction reports zero.
struct AuditCounters {
  std::uint64_t atoms = 0;
  std::uint64_t residual_checks = 0, residual_violations = 0;
  std::uint64_t identity_checks = 0, identity_violations = 0;
  std::uint64_t inequality_checks = 0, inequality_violations = 0;
  std::uint64_t degree_checks = 0, degree_violations = 0;
  std::uint64_t chain_checks = 0, chain_violations = 0;
  std::uint64_t center_checks = 0, center_violations = 0;

  [[nodiscard]] std::uint64_t violations() const {
    return residual_violations + identity_violations + inequality_violations + degree_violations +
           chain_violations + center_violations;
  }

  AuditCounters& operator+=(const AuditCounters& o) {
    atoms += o.atoms;
    residual_checks += o.residual_checks;
    residual_violations += o.residual_violations;
    identity_checks += o.identity_checks;
    identity_violations += o.identity_violations;
    inequality_checks += o.inequality_checks;
    inequality_violations += o.inequality_violations;
    degree_checks += o.degree_checks;
    degree_violations += o.degree_violations;
    chain_checks += o.chain_checks;
    chain_violations += o.chain_violations;
    center_checks += o.center_checks;
    center_violations += o.center_violations;
    return *this;
  }
};

enum class Method { fresh_star = 1, ham_path = 10, attachment_star = 2, edge_and_star = 3, empty = 4 };

struct AtomExpansion {
  std::vector<LocalTree> subtrees;  // F_i^u per tree
  std::vector<Method> methods;
};

/// Chooses the subtrees F_1^u ... F_c^u inside a labeled atom.
///
/// Types 2 and 5 get the star from their outside attachment onto W^u, type 4
/// the edge between its attachments plus the star from the smaller one, and
/// type 1 with |W^u| = 1 nothing. Types 1 (|W^u| >= 2) and 3 are served in
/// tree order: the first |R(u)| take stars centered at successive members of
/// R(u), the rest take edge-disjoint Hamiltonian paths of K[W^u] ending at
/// their attachments.
inline AtomExpansion expand_atom(const AttachmentCensus& census, AuditCounters* audit = nullptr) {
  AuditCounters local;
  auto& counters = audit ? *audit : local;
  ++counters.atoms;

  const auto& w = census.labeled;
  const int wsize = static_cast<int>(w.size());
  const int residual = static_cast<int>(census.residual.size());
  const int c = static_cast<int>(census.attachments.size());

  ++counters.residual_checks;
  if (residual != census.base - wsize - (census.n(2) + 2 * census.n(4) + census.n(5))) {
    ++counters.residual_violations;
    throw ConstructionFailure("residual count mismatch at atom: " + census.describe());
  }
  const int demand = census.n(1) + census.n(3) - residual;
  ++counters.identity_checks;
  if (c != census.base - ceil_half(census.k) || demand != census.n(4) + wsize - ceil_half(census.k)) {
    ++counters.identity_violations;
    throw ConstructionFailure("attachment identity fails at atom: " + census.describe());
  }
  if (wsize >= 2) {
    ++counters.inequality_checks;
    if (demand > wsize / 2) {
      ++counters.inequality_violations;
      throw ConstructionFailure("Hamiltonian-path demand " + std::to_string(demand) + " exceeds floor(|W^u|/2) = " +
                                std::to_string(wsize / 2) + " at atom: " + census.describe());
    }
  }

  AtomExpansion out;
  out.subtrees.resize(static_cast<std::size_t>(c));
  out.methods.resize(static_cast<std::size_t>(c));
  auto inside = [&](int x) { return std::binary_search(w.begin(), w.end(), x); };

  std::size_t next_center = 0;
  std::vector<std::size_t> path_trees;
  for (std::size_t i = 0; i < static_cast<std::size_t>(c); ++i) {
    const auto& v = census.attachments[i];
    switch (census.types[i]) {
      case AttachmentType::one_outside:
      case AttachmentType::split: {
        const int x = inside(v[0]) ? v[1] : v[0];
        out.subtrees[i] = star(x, w);
        out.methods[i] = Method::attachment_star;
        break;
      }
      case AttachmentType::two_outside: {
        out.subtrees[i] = star(v[0], w);
        out.subtrees[i].push_back(local_edge(v[0], v[1]));
        std::sort(out.subtrees[i].begin(), out.subtrees[i].end());
        out.methods[i] = Method::edge_and_star;
        break;
      }
      case AttachmentType::one_inside:
        if (wsize == 1) {
          out.methods[i] = Method::empty;
          break;
        }
        [[fallthrough]];
      case AttachmentType::two_inside:
        if (next_center < census.residual.size()) {
          const int x = census.residual[next_center++];
          ++counters.center_checks;
          if (inside(x) || std::find_if(census.attachments.begin(), census.attachments.end(), [x](const auto& a) {
                             return std::find(a.begin(), a.end(), x) != a.end();
                           }) != census.attachments.end()) {
            ++counters.center_violations;
            throw ConstructionFailure("star center is not a residual vertex: " + census.describe());
          }
          out.subtrees[i] = star(x, w);
          out.methods[i] = Method::fresh_star;
        } else {
          path_trees.push_back(i);
          out.methods[i] = Method::ham_path;
        }
        break;
    }
  }

  if (!path_trees.empty()) {
    // Local index of each W^u vertex, for the endpoint-constrained paths of K[W^u].
    auto index_of = [&](int x) {
      return static_cast<int>(std::lower_bound(w.begin(), w.end(), x) - w.begin());
    };
    std::vector<char> endpoint(static_cast<std::size_t>(wsize), 0);
    for (auto i : path_trees) {
      for (int x : census.attachments[i]) endpoint[static_cast<std::size_t>(index_of(x))] = 1;
    }
    std::vector<EndpointPair> pairs;
    std::size_t partner = 0;
    for (auto i : path_trees) {
      const auto& v = census.attachments[i];
      if (v.size() == 2) {
        pairs.emplace_back(index_of(v[0]), index_of(v[1]));
        continue;
      }
      while (partner < endpoint.size() && endpoint[partner]) ++partner;
      if (partner == endpoint.size()) {
        throw ConstructionFailure("no free path endpoint left in W^u: " + census.describe());
      }
      endpoint[partner] = 1;
      pairs.emplace_back(index_of(v[0]), static_cast<int>(partner));
    }
    const auto paths = constrained_paths(wsize, pairs);
    for (std::size_t p = 0; p < path_trees.size(); ++p) {
      LocalTree t;
      const auto& seq = paths.paths[p];
      for (std::size_t j = 0; j + 1 < seq.size(); ++j) t.push_back(local_edge(w[seq[j]], w[seq[j + 1]]));
      std::sort(t.begin(), t.end());
      out.subtrees[path_trees[p]] = std::move(t);
    }
  }
  return out;
}

/// Subtrees inside an unlabeled atom, which at most one tree may visit.
/// Paper mode spans all of H^u with a star from the smallest attachment;
/// minimal mode joins only the attachments, again as a star.
inline std::vector<LocalTree> expand_unlabeled(int base, std::span<const std::vector<int>> attachments,
                                               ConnectorMode mode) {
  std::vector<LocalTree> out(attachments.size());
  std::optional<std::size_t> owner;
  for (std::size_t i = 0; i < attachments.size(); ++i) {
    if (attachments[i].empty()) continue;
    if (owner) {
      throw ConstructionFailure("unlabeled atom visited by trees " + std::to_string(*owner) + " and " +
                                std::to_string(i));
    }
    owner = i;
  }
  if (!owner) return out;
  auto v = attachments[*owner];
  std::sort(v.begin(), v.end());
  const int center = v.front();
  if (mode == ConnectorMode::paper) {
    std::vector<int> others;
    for (int x = 0; x < base; ++x) {
      if (x != center) others.push_back(x);
    }
    out[*owner] = star(center, others);
  } else {
    out[*owner] = star(center, std::span<const int>(v).subspan(1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole-graph construction
// ---------------------------------------------------------------------------

/// The trees of one contraction level, as edges over words of that level.
struct LevelForest {
  int level = 0;
  std::vector<std::vector<WordEdge>> trees;
};

struct SteinerTreeSet {
  int depth = 0;
  int base = 0;
  ConnectorMode mode = ConnectorMode::paper;
  /// True for the k <= ℓ construction, whose trees are internally disjoint.
  bool internally_disjoint = true;
  std::vector<VertexWord> targets;
  std::vector<std::vector<WordEdge>> trees;
  /// Intermediate forests F_i from the top level down (audit trail).
  std::vector<LevelForest> forests;
  AtomId root_atom;
  AuditCounters audit;
};

namespace detail {

using CodeTree = std::vector<CodeEdge>;

inline WordEdge to_words(const CodeEdge& e, const VertexWord& prefix, int length, int base) {
  return {prefix.concat(VertexWord::decode(e.first, length, base)),
          prefix.concat(VertexWord::decode(e.second, length, base))};
}

inline LevelForest to_forest(const std::vector<CodeTree>& trees, const VertexWord& prefix, int length, int base,
                             int level) {
  LevelForest f;
  f.level = level;
  for (const auto& t : trees) {
    std::vector<WordEdge> edges;
    for (const auto& e : t) edges.push_back(to_words(e, prefix, length, base));
    f.trees.push_back(std::move(edges));
  }
  return f;
}

// Drops non-labeled leaves until none remain.
inline void prune_unlabeled_leaves(CodeTree& tree, const std::set<Code>& labeled) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Code, int> degree;
    for (const auto& [a, b] : tree) {
      ++degree[a];
      ++degree[b];
    }
    auto leaf = [&](Code v) { return degree[v] == 1 && !labeled.count(v); };
    const auto before = tree.size();
    tree.erase(std::remove_if(tree.begin(), tree.end(), [&](const CodeEdge& e) { return leaf(e.first) || leaf(e.second); }),
               tree.end());
    changed = tree.size() != before;
  }
}

inline void check_degree_bound(const std::vector<CodeTree>& trees, const std::set<Code>& labeled, int length,
                               AuditCounters& audit) {
  for (std::size_t i = 0; i < trees.size(); ++i) {
    std::map<Code, int> degree;
    for (const auto& [a, b] : trees[i]) {
      ++degree[a];
      ++degree[b];
    }
    for (Code v : labeled) {
      ++audit.degree_checks;
      if (degree[v] > 2) {
        ++audit.degree_violations;
        throw ConstructionFailure("labeled vertex (code " + std::to_string(v) + ", length " +
                                  std::to_string(length) + ") has degree " + std::to_string(degree[v]) +
                                  " in tree " + std::to_string(i));
      }
    }
  }
}

}  // namespace detail

/// Builds c = ℓ - ceil(k/2) internally disjoint U-Steiner trees of S(n, ℓ)
/// for 3 <= |U| = k <= ℓ.
///
/// The targets are first confined to their smallest atom. Trees of the root
/// K_ℓ come from base_case_trees; each further level lifts every tree edge to
/// its bridge one level down and fills each atom it touches: labeled atoms
/// through expand_atom, unlabeled ones through expand_unlabeled. Intermediate
/// forests lose their unlabeled leaves before being refined.
inline SteinerTreeSet construct_steiner_trees(const SierpinskiGraph& g, std::span<const VertexWord> targets,
                                              ConnectorMode mode = ConnectorMode::paper) {
  const int k = static_cast<int>(targets.size());
  const int base = g.base();
  if (k < 3 || k > base) {
    throw InvalidInput("construct_steiner_trees needs 3 <= k <= l (k=" + std::to_string(k) +
                       ", l=" + std::to_string(base) + ")");
  }
  const LabeledAtomTree hierarchy(g, targets);
  const auto& root = hierarchy.root();
  const int span = root.level;  // depth of the root atom
  const Code b = static_cast<Code>(base);

  SteinerTreeSet result;
  result.depth = g.depth();
  result.base = base;
  result.mode = mode;
  result.targets = hierarchy.labeled(0);
  result.root_atom = root;
  auto& audit = result.audit;

  audit.chain_checks += result.targets.size();
  if (hierarchy.max_chain_excess() > k - 1) {
    ++audit.chain_violations;
    throw ConstructionFailure("chain bound on label-set sizes fails");
  }

  // Labeled vertices per relative length j (1..span), as codes within the root atom.
  std::vector<std::set<Code>> labeled(static_cast<std::size_t>(span) + 1);
  for (int j = 0; j <= span; ++j) {
    for (const auto& w : hierarchy.labeled(g.depth() - static_cast<int>(root.prefix.size()) - j)) {
      labeled[static_cast<std::size_t>(j)].insert(w.suffix_from(root.prefix.size()).encode(base));
    }
  }

  std::vector<int> root_labels;
  for (Code x : labeled[1]) root_labels.push_back(static_cast<int>(x));
  std::vector<detail::CodeTree> trees;
  for (const auto& t : base_case_trees(root_labels, k, base)) {
    detail::CodeTree ct;
    for (auto [x, y] : t) ct.push_back(ordered(static_cast<Code>(x), static_cast<Code>(y)));
    trees.push_back(std::move(ct));
  }
  const auto c = trees.size();
  detail::check_degree_bound(trees, labeled[1], 1, audit);
  result.forests.push_back(detail::to_forest(trees, root.prefix, 1, base, span - 1));

  for (int j = 1; j < span; ++j) {
    for (auto& t : trees) detail::prune_unlabeled_leaves(t, labeled[static_cast<std::size_t>(j)]);

    std::vector<detail::CodeTree> next(c);
    // attachments[u][i]: child digits of u touched by lifted edges of tree i.
    std::map<Code, std::vector<std::vector<int>>> attachments;
    for (std::size_t i = 0; i < c; ++i) {
      for (const auto& [p, q] : trees[i]) {
        const auto [pe, qe] = refine_edge_codes(p, q, j, b);
        next[i].push_back(ordered(pe, qe));
        for (auto [owner, child] : {std::pair{p, pe}, std::pair{q, qe}}) {
          auto& slot = attachments[owner];
          slot.resize(c);
          slot[i].push_back(static_cast<int>(child % b));
        }
      }
    }
    const auto& lab = labeled[static_cast<std::size_t>(j)];
    for (Code u : lab) {
      if (!attachments.count(u)) throw ConstructionFailure("labeled vertex missing from every tree");
    }
    for (auto& [u, per_tree] : attachments) {
      std::vector<LocalTree> local;
      if (lab.count(u)) {
        std::vector<int> w;
        for (int d = 0; d < base; ++d) {
          if (labeled[static_cast<std::size_t>(j) + 1].count(u * b + static_cast<Code>(d))) w.push_back(d);
        }
        for (std::size_t i = 0; i < c; ++i) {
          if (per_tree[i].empty()) {
            throw ConstructionFailure("tree " + std::to_string(i) + " misses a labeled vertex");
          }
        }
        auto census = make_census(base, k, std::move(w), per_tree);
        local = expand_atom(census, &audit).subtrees;
      } else {
        local = expand_unlabeled(base, per_tree, mode);
      }
      for (std::size_t i = 0; i < c; ++i) {
        for (auto [x, y] : local[i]) next[i].push_back(ordered(u * b + static_cast<Code>(x), u * b + static_cast<Code>(y)));
      }
    }
    for (auto& t : next) std::sort(t.begin(), t.end());
    trees = std::move(next);
    detail::check_degree_bound(trees, labeled[static_cast<std::size_t>(j) + 1], j + 1, audit);
    result.forests.push_back(detail::to_forest(trees, root.prefix, j + 1, base, span - j - 1));
  }

  for (const auto& t : trees) {
    std::vector<WordEdge> edges;
    for (const auto& e : t) edges.push_back(detail::to_words(e, root.prefix, span, base));
    result.trees.push_back(std::move(edges));
  }
  return result;
}

/// ⌊ℓ/2⌋ edge-disjoint U-Steiner trees for k > ℓ: the Hamiltonian paths of
/// S(n, ℓ), each of which contains every vertex.
inline SteinerTreeSet construct_trees_large_k(const SierpinskiGraph& g, std::span<const VertexWord> targets) {
  const auto k = static_cast<Code>(targets.size());
  if (k <= static_cast<Code>(g.base())) throw InvalidInput("construct_trees_large_k needs k > l");
  if (k > g.order()) throw InvalidInput("more targets than vertices");
  SteinerTreeSet result;
  result.depth = g.depth();
  result.base = g.base();
  result.internally_disjoint = false;
  result.targets = detail::validated_targets(g, targets);
  result.root_atom = AtomId{g.depth(), VertexWord{}};
  for (const auto& path : decompose_sierpinski(g.depth(), g.base()).paths) {
    std::vector<WordEdge> edges;
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      const auto e = ordered(path[j], path[j + 1]);
      edges.emplace_back(g.word(e.first), g.word(e.second));
    }
    std::sort(edges.begin(), edges.end());
    result.trees.push_back(std::move(edges));
  }
  return result;
}

/// One vertex from each of k distinct top-level cells: the extreme vertices
/// <00...0>, <11...1>, ..., the configuration certifying the upper bound.
inline std::vector<VertexWord> worst_case_subset(int depth, int base, int k) {
  const SierpinskiGraph g(depth, base, 0);
  if (depth < 2) throw InvalidInput("worst_case_subset needs n >= 2");
  if (k < 3 || k > base) throw InvalidInput("worst_case_subset needs 3 <= k <= l");
  std::vector<VertexWord> out;
  for (int i = 0; i < k; ++i) out.push_back(VertexWord::constant(i, depth));
  return out;
}

}  // namespace sierpinski
