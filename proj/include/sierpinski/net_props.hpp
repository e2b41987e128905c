#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sierpinski/errors.hpp"
#include "sierpinski/graph.hpp"
#include "sierpinski/steiner_pack.hpp"

namespace sierpinski {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Enumeration-based calculators refuse graphs with more vertices than this.
inline constexpr Code kPropsEnumerationCap = 10000;

inline BigInt big_pow(int base, int exp) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

inline std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

/// Decimal rendering with 12 significant digits, the precision of every CSV.
inline std::string format_real(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

struct OrderSize {
  BigInt vertices;  // N_t = ℓ^t
  BigInt edges;     // E_t = (ℓ^{t+1} - ℓ)/2
};

inline OrderSize order_size(int t, int base) {
  if (t < 1) throw InvalidInput("order_size needs t >= 1");
  if (base < 3) throw InvalidInput("order_size needs l >= 3");
  return {big_pow(base, t), (big_pow(base, t + 1) - base) / 2};
}

/// E_t / C(N_t, 2).
inline Rational density(int t, int base) {
  const auto os = order_size(t, base);
  return Rational(os.edges) / Rational(os.vertices * (os.vertices - 1) / 2);
}

namespace detail {

inline void require_enumerable(const SierpinskiGraph& g, Code cap = kPropsEnumerationCap) {
  if (g.order() > cap || !g.materialized()) {
    throw SizeCapExceeded("S(" + std::to_string(g.depth()) + "," + std::to_string(g.base()) + ") has " +
                          std::to_string(g.order()) + " vertices; enumeration is capped at " + std::to_string(cap) +
                          " materialized vertices");
  }
}

}  // namespace detail

struct DegreeDistribution {
  std::map<int, Code> histogram;  // degree -> vertex count
  Rational p_low;                 // measured fraction of degree ℓ-1
  Rational p_high;                // measured fraction of degree ℓ
  Rational paper_p_low;           // (ℓ-1)/ℓ^n as printed
  Rational paper_p_high;          // (ℓ^t-ℓ)/ℓ^n as printed
  bool mismatch = false;
};

/// Enumerated degree histogram alongside the quoted instantaneous
/// distribution P(ℓ-1, t) = (ℓ-1)/ℓ^n, P(ℓ, t) = (ℓ^t - ℓ)/ℓ^n. The quoted
/// form counts ℓ-1 low-degree vertices where the graph has ℓ, so `mismatch`
/// is set whenever the two disagree.
inline DegreeDistribution degree_distribution(const SierpinskiGraph& g) {
  detail::require_enumerable(g);
  DegreeDistribution d;
  for (Code v = 0; v < g.order(); ++v) ++d.histogram[g.degree(v)];
  const Rational total(BigInt(g.order()));
  const int l = g.base();
  d.p_low = Rational(BigInt(d.histogram.count(l - 1) ? d.histogram.at(l - 1) : 0)) / total;
  d.p_high = Rational(BigInt(d.histogram.count(l) ? d.histogram.at(l) : 0)) / total;
  d.paper_p_low = Rational(l - 1) / total;
  d.paper_p_high = Rational(BigInt(g.order()) - l) / total;
  d.mismatch = d.p_low != d.paper_p_low || d.p_high != d.paper_p_high;
  return d;
}

struct Clustering {
  std::vector<Rational> local;  // C(v), indexed by word code
  Rational global;              // mean of the local values
};

/// Exact local clustering by triangle counting: C(v) is the number of edges
/// among the neighbours of v over d(d-1)/2, and 0 when d <= 1.
inline Clustering clustering(const SierpinskiGraph& g) {
  detail::require_enumerable(g);
  Clustering c;
  c.local.resize(static_cast<std::size_t>(g.order()));
  Rational sum = 0;
  for (Code v = 0; v < g.order(); ++v) {
    const auto nb = g.neighbor_codes(v);
    const auto d = static_cast<std::int64_t>(nb.size());
    if (d <= 1) continue;
    std::int64_t links = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const auto ni = g.neighbor_codes(nb[i]);
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (std::binary_search(ni.begin(), ni.end(), nb[j])) ++links;
      }
    }
    c.local[v] = Rational(links) / Rational(d * (d - 1) / 2);
    sum += c.local[v];
  }
  c.global = sum / Rational(BigInt(g.order()));
  return c;
}

struct ClusteringFormula {
  Rational value;
  std::optional<Rational> exact;
  /// Set when the quoted value exceeds 1 or disagrees with `exact`.
  bool inconsistent = false;
};

/// The quoted closed form ℓ^{-n}(-2ℓ + ℓ^n + ℓ^{n+1})/(ℓ-1), evaluated
/// verbatim and compared against an exact value when one is supplied.
inline ClusteringFormula clustering_paper_formula(int depth, int base, std::optional<Rational> exact = std::nullopt) {
  if (depth < 1 || base < 3) throw InvalidInput("clustering formula needs n >= 1 and l >= 3");
  ClusteringFormula f;
  const BigInt ln = big_pow(base, depth);
  f.value = Rational(ln * base + ln - 2 * base) / Rational(ln * (base - 1));
  f.exact = std::move(exact);
  f.inconsistent = f.value > 1;
  if (f.exact && abs(to_double(f.value - *f.exact)) > 1e-12) f.inconsistent = true;
  return f;
}

/// Largest BFS eccentricity, with sources shared across `jobs` threads.
inline int diameter(const SierpinskiGraph& g, unsigned jobs = 0) {
  detail::require_enumerable(g);
  const Code n = g.order();
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<Code>(jobs, n));
  std::atomic<Code> next{0};
  std::vector<int> best(jobs, 0);
  auto worker = [&](unsigned slot) {
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<Code> queue(static_cast<std::size_t>(n));
    for (Code s = next++; s < n; s = next++) {
      std::fill(dist.begin(), dist.end(), -1);
      std::size_t head = 0, tail = 0;
      queue[tail++] = s;
      dist[s] = 0;
      while (head < tail) {
        const Code v = queue[head++];
        for (Code w : g.neighbor_codes(v)) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            queue[tail++] = w;
          }
        }
      }
      if (tail != n) throw ConstructionFailure("graph is disconnected");
      best[slot] = std::max(best[slot], dist[queue[tail - 1]]);
    }
  };
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(worker, j);
  worker(0);
  for (auto& t : threads) t.join();
  return *std::max_element(best.begin(), best.end());
}

/// The quoted diameter 2^ℓ - 1 (reported next to the measured value).
inline BigInt diameter_paper(int base) { return big_pow(2, base) - 1; }

/// 2^n - 1, the value BFS produces.
inline BigInt diameter_closed_form(int depth) { return big_pow(2, depth) - 1; }

/// Finite-size Steiner-tree entropy ln(ℓ - ceil(k/2)) / ℓ^n.
inline double steiner_entropy(int depth, int base, int k) {
  if (depth < 1 || base < 3) throw InvalidInput("steiner_entropy needs n >= 1 and l >= 3");
  if (k < 3 || k > base) throw InvalidInput("steiner_entropy needs 3 <= k <= l");
  const int kappa = base - ceil_half(k);
  if (kappa <= 0) throw InvalidInput("connectivity value must be positive");
  if (kappa == 1) return 0.0;
  return std::log(static_cast<double>(kappa)) / std::pow(static_cast<double>(base), depth);
}

/// One row of props.csv. Exact columns are empty above the enumeration cap.
struct NetPropsReport {
  int t = 0;
  int base = 0;
  OrderSize order;
  Rational density;
  std::optional<Clustering> clustering;
  ClusteringFormula clustering_formula;
  std::optional<int> diameter_bfs;
  BigInt diameter_quoted;
  std::optional<DegreeDistribution> degrees;
};

inline NetPropsReport net_props_report(int t, int base, unsigned jobs = 0) {
  NetPropsReport r;
  r.t = t;
  r.base = base;
  r.order = order_size(t, base);
  r.density = density(t, base);
  r.diameter_quoted = diameter_paper(base);
  if (r.order.vertices <= kPropsEnumerationCap) {
    const SierpinskiGraph g(t, base);
    r.clustering = clustering(g);
    r.diameter_bfs = diameter(g, jobs);
    r.degrees = degree_distribution(g);
    r.clustering_formula = clustering_paper_formula(t, base, r.clustering->global);
  } else {
    r.clustering_formula = clustering_paper_formula(t, base);
  }
  return r;
}

inline void write_props_header(std::ostream& os) { os << "t,l,N,E,density,C_exact,C_paper,diam_bfs\n"; }

inline void write_props_row(std::ostream& os, const NetPropsReport& r) {
  os << r.t << ',' << r.base << ',' << r.order.vertices << ',' << r.order.edges << ',' << format_real(to_double(r.density))
     << ',' << (r.clustering ? format_real(to_double(r.clustering->global)) : "") << ','
     << format_real(to_double(r.clustering_formula.value)) << ','
     << (r.diameter_bfs ? std::to_string(*r.diameter_bfs) : "") << '\n';
}

inline void write_entropy_header(std::ostream& os) { os << "n,l,k,rho_k\n"; }

inline void write_entropy_row(std::ostream& os, int depth, int base, int k) {
  os << depth << ',' << base << ',' << k << ',' << format_real(steiner_entropy(depth, base, k)) << '\n';
}

inline void write_degrees(std::ostream& os, const DegreeDistribution& d) {
  os << "degree,count\n";
  for (const auto& [deg, count] : d.histogram) os << deg << ',' << count << '\n';
}

}  // namespace sierpinski
