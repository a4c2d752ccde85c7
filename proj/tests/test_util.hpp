#pragma once

// Test-only helpers: independent reference computations and small fixtures.

#include <algorithm>
#include <vector>

#include "dsoracle/graph.hpp"

namespace dso::testing {

// O(n^2) label-setting search over an adjacency matrix, independent of the
// library's heap/BFS code paths. `removed` is skipped.
inline std::vector<Weight> naive_distances(const Graph& g, Vertex source, Vertex removed = kNoVertex) {
  const Vertex n = g.num_vertices();
  std::vector<std::vector<Weight>> w(n, std::vector<Weight>(n, kInf));
  for (const auto& e : g.edges()) w[e.u][e.v] = w[e.v][e.u] = e.w;
  std::vector<Weight> d(n, kInf);
  std::vector<char> done(n, 0);
  d[source] = 0;
  for (Vertex it = 0; it < n; ++it) {
    Vertex best = kNoVertex;
    for (Vertex v = 0; v < n; ++v) {
      if (!done[v] && v != removed && d[v] != kInf && (best == kNoVertex || d[v] < d[best])) best = v;
    }
    if (best == kNoVertex) break;
    done[best] = 1;
    for (Vertex v = 0; v < n; ++v) {
      if (v != removed && w[best][v] != kInf) d[v] = std::min(d[v], d[best] + w[best][v]);
    }
  }
  return d;
}

// r=0, a=1, b=2, c=3: {r-a:1, a-b:1, r-c:3, c-b:1}
inline Graph diamond_graph() { return Graph(4, {{0, 1, 1}, {1, 2, 1}, {0, 3, 3}, {3, 2, 1}}); }

// r=0, a=1, b=2, c=3 on the unit 4-cycle r-a-b-c-r.
inline Graph four_cycle() { return Graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}); }

inline Graph unit_path(Vertex n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1, 1});
  return Graph(n, e);
}

}  // namespace dso::testing
