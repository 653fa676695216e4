// Transition systems on a Whitehead graph and the cycle-decomposition
// test they induce.
//
// A transition system chooses, at each positive vertex of positive
// degree, a perfect matching of the edge incidences; the matching at the
// inverse vertex is induced through sigma, which halves the search space
// exactly as the geometric pairing does. Tracing the matchings
// partitions the edge set into closed walks; a decomposition is accepted
// when every walk is a simple cycle and at least one has length > 2.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "polyg/whitehead.hpp"

namespace polyg {

// Defaults: exponents and coefficients up to 2, total edge budget 20.
// The edge budget is what keeps the default search finite in practice: a
// graph with a degree-2d vertex alone contributes (2d-1)!! matchings, so
// admitting 30-edge polynomials already reaches 10^11 systems for short
// words. 20 matches the side-pairing oracle's blowup guard.
struct SearchBounds {
  int max_exponent = 2;
  int max_coefficient = 2;
  int max_total_edges = 20;
  long time_budget_ms = 0;  // 0 = unlimited

  void validate() const {
    if (max_exponent < 1 || max_coefficient < 1 || max_total_edges < 1 ||
        time_budget_ms < 0)
      fail("search bounds must be positive");
  }
};

// All polynomials with exponent <= J, coefficient <= C and edge budget
// <= E_max, ordered by total edge budget then lexicographically on the
// coefficient tuple.
inline std::vector<Polynomial> enumerate_polynomials(
    const std::vector<int>& word_lengths, const SearchBounds& bounds) {
  bounds.validate();
  int r = static_cast<int>(word_lengths.size());
  if (r == 0) fail("no words to enumerate polynomials for");
  long slots = static_cast<long>(r) * bounds.max_exponent;
  double space = std::pow(static_cast<double>(bounds.max_coefficient + 1),
                          static_cast<double>(slots));
  if (space > 4e6) fail("polynomial bounds enumerate too large a space");

  std::vector<std::pair<int, std::vector<int>>> found;  // (budget, coeffs)
  std::vector<int> coeffs(static_cast<size_t>(slots), 0);
  auto budget_of = [&](const std::vector<int>& cs) {
    long total = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 1; j <= bounds.max_exponent; ++j)
        total += static_cast<long>(cs[static_cast<size_t>(i * bounds.max_exponent + j - 1)]) *
                 j * word_lengths[static_cast<size_t>(i)];
    return total;
  };
  auto rec = [&](auto&& self, int slot) -> void {
    if (slot == slots) {
      long b = budget_of(coeffs);
      if (b > 0 && b <= bounds.max_total_edges)
        found.emplace_back(static_cast<int>(b), coeffs);
      return;
    }
    for (int c = 0; c <= bounds.max_coefficient; ++c) {
      coeffs[static_cast<size_t>(slot)] = c;
      self(self, slot + 1);
    }
    coeffs[static_cast<size_t>(slot)] = 0;
  };
  rec(rec, 0);
  std::sort(found.begin(), found.end());
  std::vector<Polynomial> out;
  out.reserve(found.size());
  for (const auto& [budget, cs] : found) {
    std::vector<PolyTerm> terms;
    for (int i = 0; i < r; ++i)
      for (int j = 1; j <= bounds.max_exponent; ++j) {
        int c = cs[static_cast<size_t>(i * bounds.max_exponent + j - 1)];
        if (c > 0) terms.push_back({i, j, c});
      }
    out.push_back(Polynomial(std::move(terms)));
  }
  return out;
}

// Matching at each positive vertex, stored as pairs of incidences there.
struct TransitionSystem {
  // matchings[g-1]: pairing of incidences at the positive vertex of
  // generator g; empty when that vertex has degree 0.
  std::vector<std::vector<std::pair<Incidence, Incidence>>> matchings;

  // Matching at the inverse vertex induced through sigma.
  std::vector<std::pair<Incidence, Incidence>> induced_at_inverse(
      const WhiteheadGraph& g, int gen) const {
    std::vector<std::pair<Incidence, Incidence>> out;
    VertexId v = vertex_of(Letter(gen, +1));
    VertexId vinv = vertex_inverse(v);
    for (const auto& [a, b] : matchings[static_cast<size_t>(gen - 1)])
      out.push_back({Incidence{g.sigma(a), vinv}, Incidence{g.sigma(b), vinv}});
    return out;
  }
};

namespace detail {

// All perfect matchings on {0..d-1}, smallest unmatched element first:
// (d-1)!! of them, in deterministic order.
inline std::vector<std::vector<std::pair<int, int>>> all_matchings(int d) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (d % 2 != 0) return out;
  std::vector<std::pair<int, int>> cur;
  std::vector<char> used(static_cast<size_t>(d), 0);
  auto rec = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < d; ++i)
      if (!used[static_cast<size_t>(i)]) {
        first = i;
        break;
      }
    if (first == -1) {
      out.push_back(cur);
      return;
    }
    used[static_cast<size_t>(first)] = 1;
    for (int j = first + 1; j < d; ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      used[static_cast<size_t>(j)] = 1;
      cur.emplace_back(first, j);
      self(self);
      cur.pop_back();
      used[static_cast<size_t>(j)] = 0;
    }
    used[static_cast<size_t>(first)] = 0;
  };
  rec(rec);
  return out;
}

inline uint64_t saturating_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace detail

// Odometer over the product of per-positive-vertex matchings, generator 1
// most significant. Empty when some positive vertex has odd degree.
class TransitionSystemSpace {
public:
  explicit TransitionSystemSpace(const WhiteheadGraph& g) : graph_(&g) {
    int n = g.alphabet().rank;
    for (int gen = 1; gen <= n; ++gen) {
      VertexId v = vertex_of(Letter(gen, +1));
      int d = g.degree(v);
      if (d % 2 != 0) {
        empty_ = true;
        break;
      }
      if (d == 0) continue;
      vertex_gens_.push_back(gen);
      vertex_matchings_.push_back(detail::all_matchings(d));
    }
  }

  bool empty() const { return empty_; }

  uint64_t count() const {
    if (empty_) return 0;
    uint64_t total = 1;
    for (const auto& ms : vertex_matchings_)
      total = detail::saturating_mul(total, static_cast<uint64_t>(ms.size()));
    return total;
  }

  TransitionSystem at(uint64_t index) const {
    TransitionSystem ts;
    ts.matchings.resize(static_cast<size_t>(graph_->alphabet().rank));
    std::vector<size_t> digit(vertex_gens_.size(), 0);
    for (size_t k = vertex_gens_.size(); k-- > 0;) {
      uint64_t radix = vertex_matchings_[k].size();
      digit[k] = static_cast<size_t>(index % radix);
      index /= radix;
    }
    for (size_t k = 0; k < vertex_gens_.size(); ++k) {
      int gen = vertex_gens_[k];
      VertexId v = vertex_of(Letter(gen, +1));
      const auto& incs = graph_->incidences_at(v);
      for (auto [i, j] : vertex_matchings_[k][digit[k]])
        ts.matchings[static_cast<size_t>(gen - 1)].push_back(
            {incs[static_cast<size_t>(i)], incs[static_cast<size_t>(j)]});
    }
    return ts;
  }

private:
  const WhiteheadGraph* graph_;
  bool empty_ = false;
  std::vector<int> vertex_gens_;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> vertex_matchings_;
};

// Stream the full product in canonical order; `visit` returns false to
// stop. Yields nothing when some positive vertex has odd degree.
inline void enumerate_transition_systems(
    const WhiteheadGraph& g,
    const std::function<bool(uint64_t, const TransitionSystem&)>& visit) {
  TransitionSystemSpace space(g);
  uint64_t total = space.count();
  for (uint64_t i = 0; i < total; ++i)
    if (!visit(i, space.at(i))) return;
}

struct CycleDecomposition {
  struct Cycle {
    std::vector<int> edges;          // closed edge sequence
    std::vector<VertexId> vertices;  // vertices[i] joins edges[i] and edges[i+1]
    int length() const { return static_cast<int>(edges.size()); }
    bool is_bigon() const { return edges.size() == 2; }
  };
  std::vector<Cycle> cycles;

  std::vector<int> length_multiset() const {
    std::vector<int> ls;
    for (const Cycle& c : cycles) ls.push_back(c.length());
    std::sort(ls.begin(), ls.end(), std::greater<int>());
    return ls;
  }
};

enum class TraceRejection { none, non_simple, all_bigons };

struct TraceResult {
  std::optional<CycleDecomposition> decomposition;
  TraceRejection rejection = TraceRejection::none;
};

namespace detail {

// partner[2e + slot] = the matched incidence at the same vertex.
inline std::vector<Incidence> incidence_partners(const WhiteheadGraph& g,
                                                 const TransitionSystem& ts) {
  std::vector<Incidence> partner(static_cast<size_t>(2 * g.edge_count()),
                                 Incidence{-1, -1});
  auto set_pair = [&](const Incidence& a, const Incidence& b) {
    partner[static_cast<size_t>(2 * a.edge + g.slot_of(a.edge, a.at))] = b;
    partner[static_cast<size_t>(2 * b.edge + g.slot_of(b.edge, b.at))] = a;
  };
  for (int gen = 1; gen <= g.alphabet().rank; ++gen) {
    const auto& pairs = ts.matchings[static_cast<size_t>(gen - 1)];
    for (const auto& [a, b] : pairs) set_pair(a, b);
    for (const auto& [a, b] : ts.induced_at_inverse(g, gen)) set_pair(a, b);
  }
  for (const Incidence& inc : partner)
    if (inc.edge < 0) fail("transition system does not match every incidence");
  return partner;
}

}  // namespace detail

// Partition the edges into the closed walks the matchings induce. Accepts
// iff every walk is a simple cycle (visits each graph vertex at most
// once) and some walk has length > 2.
inline TraceResult trace_cycles(const WhiteheadGraph& g,
                                const TransitionSystem& ts) {
  std::vector<Incidence> partner = detail::incidence_partners(g, ts);
  int E = g.edge_count();
  std::vector<char> visited(static_cast<size_t>(2 * E), 0);
  CycleDecomposition dec;
  bool simple = true;
  bool has_long_cycle = false;
  for (int e = 0; e < E && simple; ++e) {
    for (int slot = 0; slot < 2 && simple; ++slot) {
      if (visited[static_cast<size_t>(2 * e + slot)]) continue;
      // Walk the orbit of (arrive at `at` via `edge`); mark both
      // traversal directions of each edge so the reverse orbit is not
      // reported again.
      Incidence start{e, g.edge(e).ends[static_cast<size_t>(slot)]};
      CycleDecomposition::Cycle cycle;
      Incidence cur = start;
      do {
        Incidence out = partner[static_cast<size_t>(
            2 * cur.edge + g.slot_of(cur.edge, cur.at))];
        int next_edge = out.edge;
        VertexId arrive = g.other_end(next_edge, out.at);
        cur = Incidence{next_edge, arrive};
        cycle.edges.push_back(next_edge);
        cycle.vertices.push_back(arrive);
        visited[static_cast<size_t>(2 * next_edge +
                                    g.slot_of(next_edge, arrive))] = 1;
        visited[static_cast<size_t>(
            2 * next_edge + (g.slot_of(next_edge, arrive) ^ 1))] = 1;
      } while (!(cur == start));
      std::set<VertexId> distinct(cycle.vertices.begin(), cycle.vertices.end());
      if (distinct.size() != cycle.vertices.size()) simple = false;
      if (cycle.length() > 2) has_long_cycle = true;
      dec.cycles.push_back(std::move(cycle));
    }
  }
  TraceResult result;
  if (!simple)
    result.rejection = TraceRejection::non_simple;
  else if (!has_long_cycle)
    result.rejection = TraceRejection::all_bigons;
  else
    result.decomposition = std::move(dec);
  return result;
}

// Independent check of the sigma-closure condition: whenever e, e' are
// consecutive in a cycle at v, sigma(e,v) and sigma(e',v) are consecutive
// in some cycle at v^-1. Holds by construction for traced systems but is
// asserted separately on every accepted decomposition.
inline bool sigma_closure_holds(const WhiteheadGraph& g,
                                const CycleDecomposition& dec) {
  std::set<std::tuple<VertexId, int, int>> adjacencies;
  auto norm = [](VertexId v, int a, int b) {
    return std::tuple<VertexId, int, int>(v, std::min(a, b), std::max(a, b));
  };
  for (const auto& c : dec.cycles) {
    int k = c.length();
    for (int i = 0; i < k; ++i)
      adjacencies.insert(norm(c.vertices[static_cast<size_t>(i)],
                              c.edges[static_cast<size_t>(i)],
                              c.edges[static_cast<size_t>((i + 1) % k)]));
  }
  for (const auto& [v, a, b] : adjacencies) {
    int fa = g.sigma({a, v});
    int fb = g.sigma({b, v});
    if (!adjacencies.count(norm(vertex_inverse(v), fa, fb))) return false;
  }
  return true;
}

}  // namespace polyg
