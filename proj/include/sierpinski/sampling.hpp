#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sierpinski/errors.hpp"
#include "sierpinski/graph.hpp"
#include "sierpinski/word.hpp"

namespace sierpinski {

/// k distinct vertices drawn from a seeded mt19937_64. Only the raw engine
/// output is used (reduced modulo ℓ^n), so the draw is the same on every
/// standard library. Returned in word order.
inline std::vector<VertexWord> random_subset(const SierpinskiGraph& g, int k, std::uint64_t seed) {
  if (k < 1 || static_cast<Code>(k) > g.order()) {
    throw InvalidInput("cannot draw " + std::to_string(k) + " distinct vertices from " + std::to_string(g.order()));
  }
  std::mt19937_64 rng(seed);
  std::set<Code> picked;
  while (picked.size() < static_cast<std::size_t>(k)) picked.insert(rng() % g.order());
  std::vector<VertexWord> out;
  for (Code c : picked) out.push_back(g.word(c));
  return out;
}

/// C(n, k) if it is at most `limit`, otherwise limit + 1.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t limit) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    // c * (n - i) is divisible by i + 1; an overflowing product is far above any sane limit.
    std::uint64_t product = 0;
    if (__builtin_mul_overflow(c, n - i, &product)) return limit + 1;
    c = product / (i + 1);
    if (c > limit) return limit + 1;
  }
  return c;
}

/// Parses "00,11,22" into words of S(n, ℓ).
inline std::vector<VertexWord> parse_word_list(const std::string& text, const SierpinskiGraph& g) {
  std::vector<VertexWord> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto item = text.substr(start, end - start);
    auto w = VertexWord::parse(item, g.base());
    g.validate(w);
    out.push_back(std::move(w));
    start = end + 1;
  }
  return out;
}

}  // namespace sierpinski
