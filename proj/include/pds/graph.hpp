#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pds/system.hpp"

namespace pds {

/// Plain directed graph on vertices 0..n-1.  Shared between the Markov-shift
/// circuit analysis, the freedom checks and the path-space cardinality
/// classifier.
struct digraph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  explicit digraph(int vertices = 0) : n(vertices), adj(vertices) {}

  void add_edge(int from, int to) { adj[from].push_back(to); }

  bool has_edge(int from, int to) const {
    return std::find(adj[from].begin(), adj[from].end(), to) != adj[from].end();
  }
};

/// Gr of a system: edge x -> y iff alpha(y) = x.  This is the graph of the
/// partial mapping with reversed edges, so walks are anti-orbit prefixes.
inline digraph preimage_graph(const partial_system& s) {
  digraph g(s.size());
  for (int y = 0; y < s.size(); ++y)
    if (auto x = s.alpha(y)) g.add_edge(*x, y);
  return g;
}

inline bool is_acyclic(const digraph& g) {
  // Kahn
  std::vector<int> indeg(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    for (int w : g.adj[v]) ++indeg[w];
  std::vector<int> stack;
  for (int v = 0; v < g.n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int removed = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++removed;
    for (int w : g.adj[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return removed == g.n;
}

/// All simple cycles, each reported once, rotated to start at its smallest
/// vertex; the list is sorted.  Search is rooted at the smallest vertex of
/// each cycle and restricted to larger vertices, so nothing is found twice.
inline std::vector<std::vector<int>> simple_cycles(const digraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<char> on_path(g.n, 0);

  auto dfs = [&](auto&& self, int root, int v) -> void {
    path.push_back(v);
    on_path[v] = 1;
    for (int w : g.adj[v]) {
      if (w == root)
        out.push_back(path);
      else if (w > root && !on_path[w])
        self(self, root, w);
    }
    on_path[v] = 0;
    path.pop_back();
  };

  for (int root = 0; root < g.n; ++root) dfs(dfs, root, root);
  std::sort(out.begin(), out.end());
  return out;
}

/// Exit of a circuit (x_0..x_m): an edge x_k -> y with y different from the
/// circuit successor x_{k+1 mod}.
inline bool cycle_has_exit(const digraph& g, const std::vector<int>& cyc) {
  int m = static_cast<int>(cyc.size());
  for (int k = 0; k < m; ++k) {
    int succ = cyc[(k + 1) % m];
    for (int y : g.adj[cyc[k]])
      if (y != succ) return true;
  }
  return false;
}

/// Entry of a circuit: an edge y -> x_k with y different from the circuit
/// predecessor x_{k-1 mod}.
inline bool cycle_has_entry(const digraph& g, const std::vector<int>& cyc) {
  int m = static_cast<int>(cyc.size());
  for (int k = 0; k < m; ++k) {
    int pred = cyc[(k - 1 + m) % m];
    for (int v = 0; v < g.n; ++v) {
      if (v == pred) continue;
      if (g.has_edge(v, cyc[k])) return true;
    }
  }
  return false;
}

/// Number of walks that end in a sink (no out-edge), starting anywhere.
/// Vertices reached while still on the recursion stack lie on a cycle and
/// contribute no terminated walk, which is exact whenever no cycle has an
/// exit (the finite path-space class).
inline std::uint64_t count_terminated_walks(const digraph& g) {
  std::vector<std::int64_t> f(g.n, -1);
  std::vector<char> in_progress(g.n, 0);
  auto eval = [&](auto&& self, int v) -> std::uint64_t {
    if (f[v] >= 0) return static_cast<std::uint64_t>(f[v]);
    if (in_progress[v]) return 0;
    in_progress[v] = 1;
    std::uint64_t total = g.adj[v].empty() ? 1 : 0;
    for (int w : g.adj[v]) total += self(self, w);
    in_progress[v] = 0;
    f[v] = static_cast<std::int64_t>(total);
    return total;
  };
  std::uint64_t sum = 0;
  for (int v = 0; v < g.n; ++v) sum += eval(eval, v);
  return sum;
}

/// Number of walks with exactly `len` vertices, any starting vertex.
inline double walk_count(const digraph& g, int len) {
  if (len <= 0) return 0.0;
  std::vector<double> f(g.n, 1.0); // walks of 1 vertex from v
  for (int step = 1; step < len; ++step) {
    std::vector<double> next(g.n, 0.0);
    for (int v = 0; v < g.n; ++v)
      for (int w : g.adj[v]) next[v] += f[w];
    f.swap(next);
  }
  double total = 0.0;
  for (double x : f) total += x;
  return total;
}

enum class path_space_class { finite, countably_infinite, uncountable };

/// Trichotomy for the space of maximal walks of a digraph.
///   finite     - no circuit has an exit (walks cannot branch off a cycle)
///   uncountable- some strongly connected component carries two distinct
///                circuits (more internal edges than vertices)
///   countable  - otherwise
inline path_space_class classify_path_space(const digraph& g) {
  // Tarjan SCC
  std::vector<int> comp(g.n, -1), low(g.n, 0), idx(g.n, -1), stk;
  std::vector<char> on_stk(g.n, 0);
  int counter = 0, ncomp = 0;
  auto strongconnect = [&](auto&& self, int v) -> void {
    idx[v] = low[v] = counter++;
    stk.push_back(v);
    on_stk[v] = 1;
    for (int w : g.adj[v]) {
      if (idx[w] == -1) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stk[w]) {
        low[v] = std::min(low[v], idx[w]);
      }
    }
    if (low[v] == idx[v]) {
      while (true) {
        int w = stk.back();
        stk.pop_back();
        on_stk[w] = 0;
        comp[w] = ncomp;
        if (w == v) break;
      }
      ++ncomp;
    }
  };
  for (int v = 0; v < g.n; ++v)
    if (idx[v] == -1) strongconnect(strongconnect, v);

  std::vector<int> comp_size(ncomp, 0), comp_edges(ncomp, 0);
  for (int v = 0; v < g.n; ++v) {
    ++comp_size[comp[v]];
    for (int w : g.adj[v])
      if (comp[w] == comp[v]) ++comp_edges[comp[v]];
  }
  for (int c = 0; c < ncomp; ++c)
    if (comp_edges[c] > comp_size[c]) return path_space_class::uncountable;

  bool branching = false;
  for (const auto& cyc : simple_cycles(g))
    if (cycle_has_exit(g, cyc)) branching = true;
  return branching ? path_space_class::countably_infinite : path_space_class::finite;
}

} // namespace pds
