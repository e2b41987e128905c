#pragma once

// Command-line front end. Kept in a header so the test suite can drive the
// commands in-process.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sierpinski/sierpinski.hpp"

namespace sierpinski::cli {

struct RunConfig {
  std::string command;
  int n = 0;
  int l = 0;
  int k = 0;
  std::string u;
  std::string u_policy;
  std::optional<std::uint64_t> seed;
  std::string mode = "paper";
  std::string flavor = "edge";
  std::string format;
  std::string out;
  std::string in;
  unsigned jobs = 0;
  std::optional<std::uint64_t> cap;
  bool unsafe = false;
  // oracle / hamdecomp / props specifics
  int complete_n = 0;
  bool sierpinski = false;
  std::uint64_t max_nodes = 0;
  double max_millis = 0;
  std::size_t max_vertices = 30;
  std::size_t max_edges = 60;
  int from = 0;
  std::string entropy_out;
  std::string degrees_out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Code default_cap() {
  if (const char* env = std::getenv("SIERPINSKI_CAP")) {
    try {
      return static_cast<Code>(std::stoull(env));
    } catch (const std::exception&) {
      throw UsageError("SIERPINSKI_CAP must be a non-negative integer");
    }
  }
  return SierpinskiGraph::kDefaultMaterializeCap;
}

inline Code effective_cap(const RunConfig& c) {
  const Code base = default_cap();
  if (!c.cap) return base;
  if (*c.cap > base && !c.unsafe) {
    throw UsageError("--cap " + std::to_string(*c.cap) + " exceeds the default " + std::to_string(base) +
                     "; pass --unsafe to confirm");
  }
  return *c.cap;
}

inline void require_graph_params(const RunConfig& c) {
  if (c.n < 1) throw UsageError("-n must be given and >= 1");
  if (c.l < 3) throw UsageError("-l must be given and >= 3");
}

inline Flavor parse_flavor(const std::string& s) {
  if (s == "edge") return Flavor::edge;
  if (s == "vertex") return Flavor::vertex;
  throw UsageError("unknown flavor '" + s + "'");
}

inline ConnectorMode parse_mode(const std::string& s) {
  if (s == "paper") return ConnectorMode::paper;
  if (s == "minimal") return ConnectorMode::minimal;
  throw UsageError("unknown mode '" + s + "'");
}

// Writes `data` to the --out file, or to `out` when no file was named.
inline void emit(const RunConfig& c, const std::string& data, std::ostream& out) {
  if (c.out.empty()) {
    out << data;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + c.out + "' for writing");
  f << data;
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << data;
}

// Human-readable summaries go to stdout when the data went to a file.
inline std::ostream& summary_stream(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return c.out.empty() ? err : out;
}

inline int cmd_gen(const RunConfig& c, std::ostream& out) {
  require_graph_params(c);
  const Code cap = effective_cap(c);
  const SierpinskiGraph g(c.n, c.l, std::min(cap, SierpinskiGraph::kDefaultMaterializeCap));
  if (g.order() > cap) {
    throw SizeCapExceeded("S(" + std::to_string(c.n) + "," + std::to_string(c.l) + ") has " +
                          std::to_string(g.order()) + " vertices, above the cap of " + std::to_string(cap));
  }
  std::ostringstream os;
  const auto format = c.format.empty() ? std::string("dot") : c.format;
  if (format == "dot") {
    io::write_graph_dot(os, g, cap);
  } else if (format == "json") {
    os << io::graph_json(g, cap).dump() << '\n';
  } else {
    throw UsageError("gen supports --format dot or json");
  }
  emit(c, os.str(), out);
  return 0;
}

inline std::vector<VertexWord> select_targets(const RunConfig& c, const SierpinskiGraph& g) {
  if (!c.u.empty()) {
    if (!c.u_policy.empty()) throw UsageError("give either --u or --u-policy, not both");
    auto u = parse_word_list(c.u, g);
    if (c.k && c.k != static_cast<int>(u.size())) throw UsageError("-k disagrees with the number of --u words");
    return u;
  }
  if (c.u_policy.empty()) throw UsageError("give --u or --u-policy");
  if (c.k < 2) throw UsageError("-k is required with --u-policy");
  if (c.u_policy == "random") {
    if (!c.seed) throw UsageError("--u-policy random needs --seed");
    return random_subset(g, c.k, *c.seed);
  }
  if (c.u_policy == "worst") return worst_case_subset(c.n, c.l, c.k);
  if (c.u_policy == "extreme") {
    if (c.k > c.l) throw UsageError("--u-policy extreme needs k <= l");
    std::vector<VertexWord> u;
    for (int i = c.l - c.k; i < c.l; ++i) u.push_back(VertexWord::constant(i, c.n));
    return u;
  }
  throw UsageError("unknown --u-policy '" + c.u_policy + "'");
}

inline int cmd_pack(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_graph_params(c);
  const SierpinskiGraph g(c.n, c.l, std::min(effective_cap(c), SierpinskiGraph::kDefaultMaterializeCap));
  const auto targets = select_targets(c, g);
  const int k = static_cast<int>(targets.size());
  const auto set = k <= c.l ? construct_steiner_trees(g, targets, parse_mode(c.mode))
                            : construct_trees_large_k(g, targets);
  const auto edge = verify_packing(g, set.trees, targets, Flavor::edge);
  const auto vertex = verify_packing(g, set.trees, targets, Flavor::vertex);

  std::ostringstream os;
  const auto format = c.format.empty() ? std::string("json") : c.format;
  if (format == "json") {
    os << io::tree_set_json(set).dump() << '\n';
  } else if (format == "dot") {
    io::write_tree_set_dot(os, set);
  } else {
    throw UsageError("pack supports --format json or dot");
  }
  emit(c, os.str(), out);

  auto& log = summary_stream(c, out, err);
  log << "trees: " << set.trees.size() << '\n';
  log << "edge-disjoint: " << (edge ? "pass" : "FAIL " + edge.reason) << '\n';
  log << "internally-disjoint: " << (vertex ? "pass" : "FAIL " + vertex.reason)
      << (set.internally_disjoint ? "" : " (not claimed for k > l)") << '\n';
  if (k <= c.l) log << "audit violations: " << set.audit.violations() << '\n';
  const bool ok = edge && (vertex || !set.internally_disjoint);
  return ok ? 0 : 1;
}

inline int cmd_oracle(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::optional<GenericGraph> graph;
  std::vector<std::string> names;
  std::optional<SierpinskiGraph> sg;
  if (c.complete_n > 0) {
    graph = GenericGraph::complete(c.complete_n);
    for (int v = 0; v < c.complete_n; ++v) names.push_back(std::to_string(v));
  } else {
    require_graph_params(c);
    sg.emplace(c.n, c.l);
    graph = GenericGraph::from_sierpinski(*sg, effective_cap(c));
    for (Code v = 0; v < sg->order(); ++v) names.push_back(sg->word(v).str());
  }
  SearchLimits limits;
  limits.max_vertices = c.max_vertices;
  limits.max_edges = c.max_edges;
  limits.max_nodes = c.max_nodes;
  limits.max_millis = c.max_millis;
  if ((limits.max_vertices > 30 || limits.max_edges > 60) && !c.unsafe) {
    throw UsageError("raising the oracle caps needs --unsafe");
  }

  std::vector<Flavor> flavors;
  if (c.flavor == "both") {
    flavors = {Flavor::edge, Flavor::vertex};
  } else {
    flavors = {parse_flavor(c.flavor)};
  }

  std::optional<std::vector<std::vector<int>>> subsets;
  int k = c.k;
  if (!c.u.empty() || !c.u_policy.empty()) {
    if (!sg) throw UsageError("--u and --u-policy apply to Sierpinski graphs only");
    std::vector<int> s;
    for (const auto& w : select_targets(c, *sg)) s.push_back(static_cast<int>(sg->code(w)));
    k = static_cast<int>(s.size());
    subsets = std::vector<std::vector<int>>{s};
  }
  if (k < 2) throw UsageError("-k must be >= 2");

  std::ostringstream csv;
  io::write_oracle_header(csv);
  auto& log = summary_stream(c, out, err);
  for (Flavor f : flavors) {
    const auto sweep = connectivity_k(*graph, k, f, limits, c.jobs, subsets);
    for (const auto& r : sweep.reports) io::write_oracle_row(csv, r, &names);
    const bool single = sweep.reports.size() == 1;
    log << (single ? "max disjoint trees" : (f == Flavor::edge ? "lambda_" : "kappa_") + std::to_string(k)) << " ("
        << to_string(f) << "): " << sweep.value;
    if (!sweep.complete && !single) log << " (upper bound: not every subset searched to completion)";
    if (single && !sweep.reports.front().complete) log << " (lower bound: budget exhausted)";
    log << '\n';
  }
  if (c.format == "csv" || !c.out.empty()) emit(c, csv.str(), out);
  return 0;
}

inline int cmd_props(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_graph_params(c);
  const int from = c.from > 0 ? c.from : c.n;
  if (from > c.n) throw UsageError("--from must not exceed -n");
  std::ostringstream csv;
  write_props_header(csv);
  auto& log = summary_stream(c, out, err);
  std::optional<DegreeDistribution> last_degrees;
  for (int t = from; t <= c.n; ++t) {
    const auto r = net_props_report(t, c.l, c.jobs);
    write_props_row(csv, r);
    log << "t=" << t << ": clustering formula " << format_rational(r.clustering_formula.value);
    if (r.clustering) log << " vs exact " << format_rational(r.clustering->global);
    if (r.clustering_formula.inconsistent) log << " [inconsistent]";
    log << "; diameter quoted " << r.diameter_quoted;
    if (r.diameter_bfs) log << " vs BFS " << *r.diameter_bfs;
    if (r.degrees && r.degrees->mismatch) {
      log << "; degree fractions quoted " << format_rational(r.degrees->paper_p_low) << " vs measured "
          << format_rational(r.degrees->p_low) << " [mismatch]";
    }
    log << '\n';
    if (r.degrees) last_degrees = r.degrees;
  }
  emit(c, csv.str(), out);
  if (!c.entropy_out.empty()) {
    std::ostringstream e;
    write_entropy_header(e);
    for (int k = 3; k <= c.l; ++k) write_entropy_row(e, c.n, c.l, k);
    write_file(c.entropy_out, e.str());
  }
  if (!c.degrees_out.empty()) {
    if (!last_degrees) throw SizeCapExceeded("degree histogram needs a graph within the enumeration cap");
    std::ostringstream d;
    write_degrees(d, *last_degrees);
    write_file(c.degrees_out, d.str());
  }
  return 0;
}

inline int cmd_hamdecomp(const RunConfig& c, std::ostream& out, std::ostream& err) {
  HamPathSet set;
  std::optional<SierpinskiGraph> sg;
  std::optional<std::string> problem;
  if (c.sierpinski) {
    require_graph_params(c);
    sg.emplace(c.n, c.l, std::min(effective_cap(c), SierpinskiGraph::kDefaultMaterializeCap));
    if (sg->order() > effective_cap(c)) throw SizeCapExceeded("graph above the size cap");
    set = decompose_sierpinski(c.n, c.l);
    problem = check_path_set(set, [&](Code a, Code b) { return sg->is_adjacent(a, b); });
    for (const auto& p : set.paths) {
      if (!problem && (!sg->is_extreme(p.front()) || !sg->is_extreme(p.back()))) problem = "non-extreme endpoint";
    }
  } else {
    if (c.complete_n < 2) throw UsageError("give --complete N (N >= 2) or --sierpinski -n -l");
    set = decompose_complete(c.complete_n);
    const auto n = set.ground_size;
    problem = check_path_set(set, [n](Code a, Code b) { return a != b && a < n && b < n; });
  }
  emit(c, io::ham_path_json(set, sg ? &*sg : nullptr).dump() + "\n", out);
  auto& log = summary_stream(c, out, err);
  log << "paths: " << set.paths.size() << ", matching edges: " << set.matching.size() << '\n';
  log << "verification: " << (problem ? "FAIL " + *problem : std::string("pass")) << '\n';
  return problem ? 1 : 0;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (c.in.empty()) throw UsageError("verify needs --in FILE");
  std::ifstream f(c.in, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + c.in + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  const auto p = io::parse_tree_set_text(buf.str());
  const SierpinskiGraph g(p.depth, p.base, 0);
  const auto edge = verify_packing(g, p.trees, p.targets, Flavor::edge);
  const auto vertex = verify_packing(g, p.trees, p.targets, Flavor::vertex);
  out << "trees: " << p.trees.size() << '\n';
  out << "edge-disjoint: " << (edge ? "pass" : "FAIL " + edge.reason) << '\n';
  out << "internally-disjoint: " << (vertex ? "pass" : "FAIL " + vertex.reason) << '\n';
  const bool large_k = static_cast<int>(p.targets.size()) > p.base;
  return edge && (vertex || large_k) ? 0 : 1;
}

/// Parses argv and runs one command. Returns the process exit code: 0 when
/// every requested verification passed, 1 on a failed verification, 2 on
/// invalid usage or input, 3 when a size cap refused the request.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Sierpinski graph Steiner-tree packing toolkit", "sierpinski"};
  app.require_subcommand(1);
  RunConfig c;

  auto graph_opts = [&](CLI::App* s) {
    s->add_option("-n", c.n, "word length (depth)");
    s->add_option("-l", c.l, "alphabet size (base)");
    s->add_option("--cap", c.cap, "vertex cap for materialized graphs");
    s->add_flag("--unsafe", c.unsafe, "acknowledge caps above the defaults");
    s->add_option("--out", c.out, "output file (default: stdout)");
    s->add_option("--jobs", c.jobs, "worker threads (0 = available parallelism)");
  };
  auto target_opts = [&](CLI::App* s) {
    s->add_option("-k", c.k, "number of target vertices");
    s->add_option("--u", c.u, "comma-separated target words, e.g. 00,11,22");
    s->add_option("--u-policy", c.u_policy, "random | worst | extreme")
        ->check(CLI::IsMember({"random", "worst", "extreme"}));
    s->add_option("--seed", c.seed, "seed for --u-policy random");
  };

  auto* gen = app.add_subcommand("gen", "write S(n,l) as DOT or JSON");
  graph_opts(gen);
  gen->add_option("--format", c.format, "dot | json")->check(CLI::IsMember({"dot", "json"}));

  auto* pack = app.add_subcommand("pack", "construct and verify U-Steiner trees");
  graph_opts(pack);
  target_opts(pack);
  pack->add_option("--mode", c.mode, "paper | minimal")->check(CLI::IsMember({"paper", "minimal"}));
  pack->add_option("--format", c.format, "json | dot")->check(CLI::IsMember({"json", "dot"}));

  auto* oracle = app.add_subcommand("oracle", "exact generalized connectivity by search");
  graph_opts(oracle);
  target_opts(oracle);
  oracle->add_option("--complete", c.complete_n, "use K_N instead of S(n,l)");
  oracle->add_option("--flavor", c.flavor, "edge | vertex | both")
      ->check(CLI::IsMember({"edge", "vertex", "both"}));
  oracle->add_option("--format", c.format, "csv")->check(CLI::IsMember({"csv"}));
  oracle->add_option("--max-nodes", c.max_nodes, "search-node budget per subset (0 = none)");
  oracle->add_option("--max-millis", c.max_millis, "time budget per subset in ms (0 = none)");
  oracle->add_option("--max-vertices", c.max_vertices, "vertex cap");
  oracle->add_option("--max-edges", c.max_edges, "edge cap");

  auto* props = app.add_subcommand("props", "network properties as CSV");
  graph_opts(props);
  props->add_option("--from", c.from, "first t of the table (default: n)");
  props->add_option("--entropy-out", c.entropy_out, "also write entropy.csv rows for k = 3..l");
  props->add_option("--degrees-out", c.degrees_out, "also write the degree histogram");
  props->add_option("--format", c.format, "csv")->check(CLI::IsMember({"csv"}));

  auto* ham = app.add_subcommand("hamdecomp", "edge-disjoint Hamiltonian paths");
  graph_opts(ham);
  ham->add_option("--complete", c.complete_n, "decompose K_N");
  ham->add_flag("--sierpinski", c.sierpinski, "decompose S(n,l)");
  ham->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));

  auto* verify = app.add_subcommand("verify", "re-check a JSON tree set");
  verify->add_option("--in", c.in, "tree-set JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen) return cmd_gen(c, out);
    if (*pack) return cmd_pack(c, out, err);
    if (*oracle) return cmd_oracle(c, out, err);
    if (*props) return cmd_props(c, out, err);
    if (*ham) return cmd_hamdecomp(c, out, err);
    if (*verify) return cmd_verify(c, out);
  } catch (const SizeCapExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return 3;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConstructionFailure& e) {
    err << "construction failed: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace sierpinski::cli
