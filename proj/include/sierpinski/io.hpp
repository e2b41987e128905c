#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sierpinski/errors.hpp"
#include "sierpinski/graph.hpp"
#include "sierpinski/ham_decomp.hpp"
#include "sierpinski/net_props.hpp"
#include "sierpinski/oracle.hpp"
#include "sierpinski/steiner_pack.hpp"

namespace sierpinski::io {

// ordered_json keeps keys in insertion order, so output bytes depend only on
// the data.
using Json = nlohmann::ordered_json;

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

/// Undirected DOT, one line per edge, vertices named by their digit strings.
inline void write_graph_dot(std::ostream& os, const SierpinskiGraph& g, Code cap = SierpinskiGraph::kDefaultMaterializeCap) {
  const auto edges = g.edges(cap);
  os << "graph S_" << g.depth() << "_" << g.base() << " {\n";
  if (g.depth() == 0) os << "  " << quoted("") << ";\n";
  for (const auto& [u, v] : edges) os << "  " << quoted(g.word(u).str()) << " -- " << quoted(g.word(v).str()) << ";\n";
  os << "}\n";
}

inline Json graph_json(const SierpinskiGraph& g, Code cap = SierpinskiGraph::kDefaultMaterializeCap) {
  const auto edges = g.edges(cap);
  Json j;
  j["n"] = g.depth();
  j["l"] = g.base();
  Json vs = Json::array();
  for (Code v = 0; v < g.order(); ++v) vs.push_back(g.word(v).str());
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& [u, v] : edges) es.push_back(Json::array({g.word(u).str(), g.word(v).str()}));
  j["edges"] = std::move(es);
  return j;
}

inline Json tree_set_json(const SteinerTreeSet& set) {
  Json j;
  j["n"] = set.depth;
  j["l"] = set.base;
  Json u = Json::array();
  for (const auto& w : set.targets) u.push_back(w.str());
  j["U"] = std::move(u);
  Json trees = Json::array();
  for (const auto& t : set.trees) {
    Json edges = Json::array();
    for (const auto& [a, b] : t) edges.push_back(Json::array({a.str(), b.str()}));
    trees.push_back(std::move(edges));
  }
  j["trees"] = std::move(trees);
  j["mode"] = to_string(set.mode);
  return j;
}

/// Tree set read back from JSON, ready for verify_packing.
struct ParsedTreeSet {
  int depth = 0;
  int base = 0;
  std::vector<VertexWord> targets;
  std::vector<std::vector<WordEdge>> trees;
  std::string mode;
};

inline ParsedTreeSet parse_tree_set(const Json& j) {
  try {
    ParsedTreeSet p;
    p.depth = j.at("n").get<int>();
    p.base = j.at("l").get<int>();
    if (p.base < 3 || p.base > kMaxBase) throw InvalidInput("base l out of range");
    for (const auto& w : j.at("U")) p.targets.push_back(VertexWord::parse(w.get<std::string>(), p.base));
    for (const auto& t : j.at("trees")) {
      auto& tree = p.trees.emplace_back();
      for (const auto& e : t) {
        if (!e.is_array() || e.size() != 2) throw InvalidInput("tree edge must be a pair of words");
        tree.emplace_back(VertexWord::parse(e[0].get<std::string>(), p.base),
                          VertexWord::parse(e[1].get<std::string>(), p.base));
      }
    }
    if (j.contains("mode")) p.mode = j.at("mode").get<std::string>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed tree-set JSON: ") + e.what());
  }
}

inline ParsedTreeSet parse_tree_set_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed tree-set JSON: ") + e.what());
  }
  return parse_tree_set(j);
}

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"red",    "blue",  "darkgreen", "orange", "purple", "brown",
                                 "magenta", "cyan", "gold",      "gray",   "navy",   "olive"};
  return colors[i % (sizeof(colors) / sizeof(colors[0]))];
}

/// DOT of the union of the trees; every tree gets its own edge colour and
/// targets are drawn as boxes.
inline void write_tree_set_dot(std::ostream& os, const SteinerTreeSet& set) {
  os << "graph steiner_trees {\n";
  for (const auto& w : set.targets) os << "  " << quoted(w.str()) << " [shape=box];\n";
  for (std::size_t i = 0; i < set.trees.size(); ++i) {
    for (const auto& [a, b] : set.trees[i]) {
      os << "  " << quoted(a.str()) << " -- " << quoted(b.str()) << " [color=" << palette(i) << ", tree=" << i
         << "];\n";
    }
  }
  os << "}\n";
}

/// {N, paths, matching}. With a Sierpinski graph the vertices are written as
/// words and the graph parameters are added.
inline Json ham_path_json(const HamPathSet& set, const SierpinskiGraph* g = nullptr) {
  auto vertex = [&](Code v) -> Json {
    if (g) return g->word(v).str();
    return v;
  };
  Json j;
  if (g) {
    j["n"] = g->depth();
    j["l"] = g->base();
  }
  j["N"] = set.ground_size;
  Json paths = Json::array();
  for (const auto& p : set.paths) {
    Json path = Json::array();
    for (Code v : p) path.push_back(vertex(v));
    paths.push_back(std::move(path));
  }
  j["paths"] = std::move(paths);
  Json matching = Json::array();
  for (const auto& [a, b] : set.matching) matching.push_back(Json::array({vertex(a), vertex(b)}));
  j["matching"] = std::move(matching);
  return j;
}

inline void write_oracle_header(std::ostream& os) { os << "S,flavor,value,complete,nodes,millis\n"; }

/// One CSV row per subset; S is written as space-separated vertex names.
inline void write_oracle_row(std::ostream& os, const ConnectivityReport& r,
                             const std::vector<std::string>* names = nullptr) {
  std::string s;
  for (std::size_t i = 0; i < r.subset.size(); ++i) {
    if (i) s += ' ';
    s += names ? (*names)[static_cast<std::size_t>(r.subset[i])] : std::to_string(r.subset[i]);
  }
  os << s << ',' << to_string(r.flavor) << ',' << r.value << ',' << (r.complete ? "true" : "false") << ','
     << r.nodes << ',' << format_real(r.millis) << '\n';
}

}  // namespace sierpinski::io
