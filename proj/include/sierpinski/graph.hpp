#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sierpinski/errors.hpp"
#include "sierpinski/word.hpp"

namespace sierpinski {

using WordEdge = std::pair<VertexWord, VertexWord>;
using CodeEdge = std::pair<Code, Code>;

inline CodeEdge ordered(Code a, Code b) { return a < b ? CodeEdge{a, b} : CodeEdge{b, a}; }

/// The s-atom A_{s,u}: every vertex sharing the length-(n-s) prefix.
struct AtomId {
  int level = 0;
  VertexWord prefix;

  auto operator<=>(const AtomId&) const = default;
  bool operator==(const AtomId&) const = default;
};

/// Repunit (ℓ^r - 1)/(ℓ - 1): the code of <11...1> with r digits.
inline Code repunit(Code base, int r) {
  Code v = 0;
  for (int i = 0; i < r; ++i) v = v * base + 1;
  return v;
}

/// Sierpinski graph S(n, ℓ) over base-ℓ words of length n.
///
/// Adjacency follows the prefix/swap rule and is evaluated on demand; the
/// adjacency lists are materialized only when ℓ^n is at most the cap given
/// at construction. Objects are immutable after construction.
class SierpinskiGraph {
 public:
  static constexpr Code kDefaultMaterializeCap = 100000;

  SierpinskiGraph(int depth, int base, Code materialize_cap = kDefaultMaterializeCap)
      : SierpinskiGraph(depth, base, materialize_cap, /*allow_point=*/false) {}

  [[nodiscard]] int depth() const { return depth_; }
  [[nodiscard]] int base() const { return base_; }
  [[nodiscard]] Code order() const { return order_; }
  /// (ℓ^{n+1} - ℓ) / 2, evaluated without forming ℓ^{n+1}.
  [[nodiscard]] Code size() const {
    if (depth_ == 0) return 0;
    // ℓ (ℓ^n - 1) / 2 and ℓ^n - 1 = (ℓ - 1) * repunit(n).
    const Code b = static_cast<Code>(base_);
    const Code r = repunit(b, depth_);
    const Code a = b * (b - 1);
    return (a / 2) * r;  // ℓ(ℓ-1) is always even
  }
  [[nodiscard]] bool materialized() const { return adjacency_ != nullptr; }

  [[nodiscard]] VertexWord word(Code code) const {
    if (code >= order_) throw InvalidInput("vertex code " + std::to_string(code) + " out of range");
    return VertexWord::decode(code, depth_, base_);
  }

  [[nodiscard]] Code code(const VertexWord& w) const {
    validate(w);
    return w.encode(base_);
  }

  void validate(const VertexWord& w) const {
    if (static_cast<int>(w.size()) != depth_) {
      throw InvalidInput("word '" + w.str() + "' has length " + std::to_string(w.size()) +
                         ", expected " + std::to_string(depth_));
    }
    for (auto d : w.digits()) {
      if (d >= base_) {
        throw InvalidInput("word '" + w.str() + "' has a digit >= " + std::to_string(base_));
      }
    }
  }

  /// Direct evaluation of the adjacency rule: u and v first differ at some
  /// position d, and every later digit of u equals v_d and of v equals u_d.
  [[nodiscard]] bool is_adjacent(const VertexWord& u, const VertexWord& v) const {
    validate(u);
    validate(v);
    return words_adjacent(u, v);
  }

  [[nodiscard]] static bool words_adjacent(const VertexWord& u, const VertexWord& v) {
    if (u.size() != v.size()) return false;
    std::size_t d = 0;
    while (d < u.size() && u[d] == v[d]) ++d;
    if (d == u.size()) return false;
    for (std::size_t j = d + 1; j < u.size(); ++j) {
      if (u[j] != v[d] || v[j] != u[d]) return false;
    }
    return true;
  }

  [[nodiscard]] bool is_adjacent(Code u, Code v) const {
    if (u >= order_ || v >= order_) throw InvalidInput("vertex code out of range");
    if (u == v) return false;
    const auto nb = neighbor_codes(u);
    return std::find(nb.begin(), nb.end(), v) != nb.end();
  }

  [[nodiscard]] bool is_extreme(Code u) const {
    return depth_ == 0 || u % repunit(static_cast<Code>(base_), depth_) == 0;
  }

  [[nodiscard]] int degree(Code u) const {
    if (depth_ == 0) return 0;
    return base_ - 1 + (is_extreme(u) ? 0 : 1);
  }

  /// Neighbors in ascending code order.
  [[nodiscard]] std::vector<Code> neighbor_codes(Code u) const {
    if (u >= order_) throw InvalidInput("vertex code out of range");
    if (adjacency_) return (*adjacency_)[u];
    return generate_neighbors(u);
  }

  [[nodiscard]] std::vector<VertexWord> neighbors(const VertexWord& u) const {
    std::vector<VertexWord> out;
    for (Code v : neighbor_codes(code(u))) out.push_back(word(v));
    return out;
  }

  /// All edges (u < v) in ascending order. Refuses above `cap` vertices.
  [[nodiscard]] std::vector<CodeEdge> edges(Code cap = kDefaultMaterializeCap) const {
    if (order_ > cap) {
      throw SizeCapExceeded("S(" + std::to_string(depth_) + "," + std::to_string(base_) + ") has " +
                            std::to_string(order_) + " vertices, above the cap of " + std::to_string(cap));
    }
    std::vector<CodeEdge> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Code u = 0; u < order_; ++u) {
      for (Code v : neighbor_codes(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  [[nodiscard]] AtomId atom_of(const VertexWord& v, int level) const {
    validate(v);
    if (level < 0 || level > depth_) {
      throw InvalidInput("atom level " + std::to_string(level) + " outside [0," + std::to_string(depth_) + "]");
    }
    return AtomId{level, v.prefix(static_cast<std::size_t>(depth_ - level))};
  }

  /// The contraction G_s = G / {s-atoms}, which is S(n - s, ℓ). Level n gives
  /// the single-vertex graph.
  [[nodiscard]] SierpinskiGraph contract(int level) const {
    if (level < 0 || level > depth_) {
      throw InvalidInput("contraction level " + std::to_string(level) + " outside [0," +
                         std::to_string(depth_) + "]");
    }
    return SierpinskiGraph(depth_ - level, base_, cap_, /*allow_point=*/true);
  }

  bool operator==(const SierpinskiGraph& o) const { return depth_ == o.depth_ && base_ == o.base_; }

 private:
  SierpinskiGraph(int depth, int base, Code cap, bool allow_point)
      : depth_(depth), base_(base), cap_(cap) {
    if (depth < (allow_point ? 0 : 1)) throw InvalidInput("Sierpinski depth n must be >= 1");
    if (base < 3) throw InvalidInput("Sierpinski base l must be >= 3");
    if (base > kMaxBase) throw InvalidInput("Sierpinski base l must be <= " + std::to_string(kMaxBase));
    order_ = checked_pow(base, depth);
    checked_pow(base, depth + 1);  // keeps size() and child codes in range
    if (order_ <= cap) {
      auto adj = std::make_shared<std::vector<std::vector<Code>>>(order_);
      for (Code u = 0; u < order_; ++u) (*adj)[u] = generate_neighbors(u);
      adjacency_ = std::move(adj);
    }
  }

  [[nodiscard]] std::vector<Code> generate_neighbors(Code u) const {
    std::vector<Code> out;
    if (depth_ == 0) return out;
    const Code b = static_cast<Code>(base_);
    const Code last = u % b;
    const Code cell = u - last;
    for (Code x = 0; x < b; ++x) {
      if (x != last) out.push_back(cell + x);
    }
    // Bridge: u = w i j^r with i != j, neighbor w j i^r.
    int r = 0;
    Code rest = u;
    while (r < depth_ && rest % b == last) {
      rest /= b;
      ++r;
    }
    if (r < depth_) {
      const Code i = rest % b;
      const Code w = rest / b;
      const Code shift = checked_pow(base_, r);
      out.push_back((w * b + last) * shift + i * repunit(b, r));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int depth_;
  int base_;
  Code cap_;
  Code order_ = 1;
  std::shared_ptr<const std::vector<std::vector<Code>>> adjacency_;
};

/// The bridge <i j...j> -- <j i...i> joining sibling cells i and j, as words
/// of the given length.
inline WordEdge bridge_edge(int i, int j, int length) {
  if (i == j) throw InvalidInput("bridge edge needs two distinct cells");
  if (i < 0 || j < 0) throw InvalidInput("negative cell index");
  if (length < 1) throw InvalidInput("bridge edge length must be >= 1");
  auto a = VertexWord::constant(j, length);
  auto b = VertexWord::constant(i, length);
  std::vector<std::uint8_t> da(a.digits().begin(), a.digits().end());
  std::vector<std::uint8_t> db(b.digits().begin(), b.digits().end());
  da[0] = static_cast<std::uint8_t>(i);
  db[0] = static_cast<std::uint8_t>(j);
  return {VertexWord(std::move(da)), VertexWord(std::move(db))};
}

/// For an edge uv of G_s (words of length m), the unique edge u_e v_e of
/// G_{s-1} realizing it, with u_e in the cell of u and v_e in the cell of v.
inline WordEdge edge_endpoints_in_refinement(const VertexWord& u, const VertexWord& v, int base) {
  for (const auto* w : {&u, &v}) {
    for (auto d : w->digits()) {
      if (d >= base) throw InvalidInput("word '" + w->str() + "' has a digit >= base");
    }
  }
  if (!SierpinskiGraph::words_adjacent(u, v)) {
    throw InvalidInput("'" + u.str() + "' and '" + v.str() + "' are not adjacent");
  }
  std::size_t d = 0;
  while (u[d] == v[d]) ++d;
  return {u.appended(v[d]), v.appended(u[d])};
}

/// Code-level version of edge_endpoints_in_refinement for words of length m.
inline CodeEdge refine_edge_codes(Code u, Code v, int length, Code base) {
  int d = 0;
  while (code_digit(u, d, length, base) == code_digit(v, d, length, base)) ++d;
  const Code ud = static_cast<Code>(code_digit(u, d, length, base));
  const Code vd = static_cast<Code>(code_digit(v, d, length, base));
  return {u * base + vd, v * base + ud};
}

}  // namespace sierpinski
