// Multigraph analyses used on Whitehead graphs: connectivity, cut
// vertices, edge connectivity, valence, planarity, isomorphism, and the
// non-virtual-geometricity obstruction (k-valent + k-edge-connected +
// non-planar, k >= 3).
//
// Inputs are tiny (at most 2*rank vertices), so the algorithms favour
// directness: exhaustive vertex deletion for cut vertices, pairwise
// max-flow for edge connectivity, backtracking for isomorphism.
// Planarity is delegated to boost::boyer_myrvold on the underlying
// simple graph; parallel edges never affect it.

#pragma once

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "polyg/whitehead.hpp"

namespace polyg {

// Undirected multigraph on vertices 0..num_vertices-1. Parallel edges are
// repeated entries; loops are not expected from Whitehead graphs.
struct Multigraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<size_t>(num_vertices), 0);
    for (auto [a, b] : edges) {
      ++d[static_cast<size_t>(a)];
      ++d[static_cast<size_t>(b)];
    }
    return d;
  }
};

inline Multigraph underlying_multigraph(const WhiteheadGraph& g) {
  Multigraph m;
  m.num_vertices = g.vertex_count();
  m.edges.reserve(g.edges().size());
  for (const WGEdge& e : g.edges()) m.edges.emplace_back(e.ends[0], e.ends[1]);
  return m;
}

inline Multigraph complete_bipartite(int a, int b) {
  Multigraph m;
  m.num_vertices = a + b;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) m.edges.emplace_back(i, a + j);
  return m;
}

inline Multigraph complete_graph(int n) {
  Multigraph m;
  m.num_vertices = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.edges.emplace_back(i, j);
  return m;
}

namespace detail {

// Reachability over the whole vertex set, with `skip` removed.
inline int reachable_count(const Multigraph& g, int start, int skip) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(g.num_vertices));
  for (auto [a, b] : g.edges) {
    if (a == skip || b == skip) continue;
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<char> seen(static_cast<size_t>(g.num_vertices), 0);
  std::vector<int> stack{start};
  seen[static_cast<size_t>(start)] = 1;
  int count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++count;
    for (int u : adj[static_cast<size_t>(v)])
      if (!seen[static_cast<size_t>(u)]) {
        seen[static_cast<size_t>(u)] = 1;
        stack.push_back(u);
      }
  }
  return count;
}

}  // namespace detail

// Standard connectivity on the full vertex set; isolated vertices make a
// graph with edges elsewhere disconnected.
inline bool is_connected(const Multigraph& g) {
  if (g.num_vertices <= 1) return true;
  return detail::reachable_count(g, 0, -1) == g.num_vertices;
}

// v is a cut vertex iff the graph minus v (and its incident edges) is
// disconnected. Exhaustive deletion, as befits graphs this small.
inline std::vector<int> cut_vertices(const Multigraph& g) {
  std::vector<int> cuts;
  if (g.num_vertices <= 2) return cuts;
  for (int v = 0; v < g.num_vertices; ++v) {
    int start = (v == 0) ? 1 : 0;
    if (detail::reachable_count(g, start, v) != g.num_vertices - 1)
      cuts.push_back(v);
  }
  return cuts;
}

// Minimum number of edges whose removal disconnects the graph; 0 when the
// graph is already disconnected. Pairwise max-flow with unit capacity per
// parallel edge.
inline int edge_connectivity(const Multigraph& g) {
  int n = g.num_vertices;
  if (n <= 1) return 0;
  if (!is_connected(g)) return 0;
  std::vector<std::vector<int>> base(static_cast<size_t>(n),
                                     std::vector<int>(static_cast<size_t>(n), 0));
  for (auto [a, b] : g.edges) {
    if (a == b) continue;
    ++base[static_cast<size_t>(a)][static_cast<size_t>(b)];
    ++base[static_cast<size_t>(b)][static_cast<size_t>(a)];
  }
  auto max_flow = [&](int s, int t) {
    std::vector<std::vector<int>> cap = base;
    int flow = 0;
    for (;;) {
      std::vector<int> prev(static_cast<size_t>(n), -1);
      std::queue<int> q;
      q.push(s);
      prev[static_cast<size_t>(s)] = s;
      while (!q.empty() && prev[static_cast<size_t>(t)] == -1) {
        int v = q.front();
        q.pop();
        for (int u = 0; u < n; ++u)
          if (prev[static_cast<size_t>(u)] == -1 &&
              cap[static_cast<size_t>(v)][static_cast<size_t>(u)] > 0) {
            prev[static_cast<size_t>(u)] = v;
            q.push(u);
          }
      }
      if (prev[static_cast<size_t>(t)] == -1) return flow;
      int bottleneck = INT_MAX;
      for (int v = t; v != s; v = prev[static_cast<size_t>(v)])
        bottleneck = std::min(
            bottleneck,
            cap[static_cast<size_t>(prev[static_cast<size_t>(v)])][static_cast<size_t>(v)]);
      for (int v = t; v != s; v = prev[static_cast<size_t>(v)]) {
        int p = prev[static_cast<size_t>(v)];
        cap[static_cast<size_t>(p)][static_cast<size_t>(v)] -= bottleneck;
        cap[static_cast<size_t>(v)][static_cast<size_t>(p)] += bottleneck;
      }
      flow += bottleneck;
    }
  };
  int lambda = INT_MAX;
  for (int t = 1; t < n; ++t) lambda = std::min(lambda, max_flow(0, t));
  return lambda;
}

// Planarity of the underlying simple graph.
inline bool is_planar(const Multigraph& g) {
  using BoostGraph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  std::set<std::pair<int, int>> simple;
  for (auto [a, b] : g.edges) {
    if (a == b) continue;
    simple.insert({std::min(a, b), std::max(a, b)});
  }
  BoostGraph bg(static_cast<size_t>(std::max(g.num_vertices, 1)));
  for (auto [a, b] : simple) boost::add_edge(static_cast<size_t>(a), static_cast<size_t>(b), bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

// k when every vertex has degree exactly k, absent for mixed degrees.
inline std::optional<int> is_k_valent(const Multigraph& g) {
  if (g.num_vertices == 0) return std::nullopt;
  std::vector<int> d = g.degrees();
  for (int x : d)
    if (x != d[0]) return std::nullopt;
  return d[0];
}

// Multigraph isomorphism by degree-refined permutation search. Both
// graphs must have at most 16 vertices.
inline bool isomorphic(const Multigraph& g, const Multigraph& h) {
  if (g.num_vertices > 16 || h.num_vertices > 16)
    fail("isomorphism test limited to 16 vertices");
  if (g.num_vertices != h.num_vertices || g.edges.size() != h.edges.size())
    return false;
  int n = g.num_vertices;
  auto adjacency = [n](const Multigraph& m) {
    std::vector<std::vector<int>> a(static_cast<size_t>(n),
                                    std::vector<int>(static_cast<size_t>(n), 0));
    for (auto [u, v] : m.edges) {
      ++a[static_cast<size_t>(u)][static_cast<size_t>(v)];
      if (u != v) ++a[static_cast<size_t>(v)][static_cast<size_t>(u)];
    }
    return a;
  };
  std::vector<std::vector<int>> ga = adjacency(g), ha = adjacency(h);
  std::vector<int> gd = g.degrees(), hd = h.degrees();
  {
    std::vector<int> gs = gd, hs = hd;
    std::sort(gs.begin(), gs.end());
    std::sort(hs.begin(), hs.end());
    if (gs != hs) return false;
  }
  std::vector<int> perm(static_cast<size_t>(n), -1);
  std::vector<char> used(static_cast<size_t>(n), 0);
  auto backtrack = [&](auto&& self, int u) -> bool {
    if (u == n) return true;
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<size_t>(v)] ||
          gd[static_cast<size_t>(u)] != hd[static_cast<size_t>(v)])
        continue;
      bool ok = ga[static_cast<size_t>(u)][static_cast<size_t>(u)] ==
                ha[static_cast<size_t>(v)][static_cast<size_t>(v)];
      for (int w = 0; w < u && ok; ++w)
        if (ga[static_cast<size_t>(u)][static_cast<size_t>(w)] !=
            ha[static_cast<size_t>(v)][static_cast<size_t>(perm[static_cast<size_t>(w)])])
          ok = false;
      if (!ok) continue;
      perm[static_cast<size_t>(u)] = v;
      used[static_cast<size_t>(v)] = 1;
      if (self(self, u + 1)) return true;
      used[static_cast<size_t>(v)] = 0;
      perm[static_cast<size_t>(u)] = -1;
    }
    return false;
  };
  return backtrack(backtrack, 0);
}

// Sufficient obstruction to virtual geometricity. applies = false is
// inconclusive; the verdict is for W(w) of the word as given (applying
// automorphisms first may change it).
struct ManningVerdict {
  bool applies = false;
  std::optional<int> k;
  std::optional<int> valence;  // the three checks, recorded individually
  int edge_conn = 0;
  bool planar = true;
};

inline ManningVerdict manning_obstruction(const Word& w) {
  if (!w.is_cyclically_reduced())
    fail("manning_obstruction requires a cyclically reduced word");
  Multigraph g = underlying_multigraph(whitehead_graph(w));
  ManningVerdict verdict;
  verdict.valence = is_k_valent(g);
  verdict.edge_conn = edge_connectivity(g);
  verdict.planar = is_planar(g);
  if (verdict.valence && *verdict.valence >= 3 &&
      verdict.edge_conn >= *verdict.valence && !verdict.planar) {
    verdict.applies = true;
    verdict.k = *verdict.valence;
  }
  return verdict;
}

}  // namespace polyg
