#include "dsoracle/apasp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "dsoracle/generate.hpp"

namespace dso {

SampleHierarchy sample_hierarchy(Vertex n, std::int32_t k, std::uint64_t seed) {
  if (k <= 1) throw std::invalid_argument("sample_hierarchy: k must be at least 2");
  if (n <= 0) throw std::invalid_argument("sample_hierarchy: empty vertex set");
  const double p = std::pow(static_cast<double>(n), -1.0 / k);
  SampleHierarchy h;
  h.k = k;
  h.seed = seed;
  for (std::uint32_t attempt = 0;; ++attempt) {
    Rng rng(attempt == 0 ? seed : sub_seed(seed, "hierarchy", attempt));
    h.levels.assign(static_cast<std::size_t>(k), {});
    h.rank.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) h.levels[0].push_back(v);
    for (std::int32_t i = 1; i < k; ++i) {
      for (Vertex v : h.levels[i - 1]) {
        if (rng.uniform() < p) {
          h.levels[i].push_back(v);
          h.rank[v] = i;
        }
      }
    }
    h.attempts = attempt + 1;
    if (!h.levels[k - 1].empty()) return h;
  }
}

NearestSample nearest_sample(const Graph& g, std::span<const Vertex> set, Vertex x) {
  const Vertex n = g.num_vertices();
  NearestSample out;
  out.dist.assign(n, kInf);
  out.vertex.assign(n, kNoVertex);
  std::deque<Vertex> queue;
  for (Vertex s : set) {
    if (s == x) continue;
    out.dist[s] = 0;
    out.vertex[s] = s;
    queue.push_back(s);
  }
  // Layers are exhausted in order, so every tight parent is seen before its
  // child is expanded and the smallest label survives.
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors(u)) {
      const Vertex y = nb.to;
      if (y == x) continue;
      if (out.dist[y] == kInf) {
        out.dist[y] = out.dist[u] + 1;
        out.vertex[y] = out.vertex[u];
        queue.push_back(y);
      } else if (out.dist[y] == out.dist[u] + 1) {
        out.vertex[y] = std::min(out.vertex[y], out.vertex[u]);
      }
    }
  }
  return out;
}

namespace {

Weight next_level_bound(const SampleHierarchy& h, std::int32_t i, const std::vector<Weight>& dist) {
  if (i + 1 >= h.k) return kInf;
  Weight best = kInf;
  for (Vertex b : h.levels[i + 1]) best = std::min(best, dist[b]);
  return best;
}

BallRecord collect_ball(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i, Vertex x, double eps,
                        bool truncated) {
  if (i < 0 || i >= h.k) throw std::invalid_argument("ball: level out of range");
  if (v == x) throw std::invalid_argument("ball: center equals failed vertex");
  const auto sr = single_source(g, v, x);
  BallRecord out;
  out.bound = next_level_bound(h, i, sr.dist);
  const Weight limit = truncated ? out.bound / (1 + eps) : out.bound;
  for (Vertex w : h.levels[i]) {
    if (w != x && sr.dist[w] < limit) {
      out.members.push_back(w);
      out.dist.push_back(sr.dist[w]);
    }
  }
  return out;
}

// Search from a center that only expands vertices passing the truncation
// test; those vertices' shortest paths stay inside the cluster.
class PrunedSearch {
 public:
  explicit PrunedSearch(Vertex n) : stamp_(n, 0), dist_(n, 0) {}

  template <typename Out>
  void run(const Graph& g, Vertex w, Vertex x, double eps, std::span<const Weight> bound, Out&& emit) {
    ++round_;
    auto inside = [&](Vertex y, Weight d) { return d < bound[y] / (1 + eps); };
    if (!inside(w, 0)) return;
    queue_.clear();
    queue_.push_back(w);
    stamp_[w] = round_;
    dist_[w] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex u = queue_[head];
      emit(u);
      for (const auto& nb : g.neighbors(u)) {
        const Vertex y = nb.to;
        if (y == x || stamp_[y] == round_) continue;
        stamp_[y] = round_;
        dist_[y] = dist_[u] + 1;
        if (inside(y, dist_[y])) queue_.push_back(y);
      }
    }
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<Weight> dist_;
  std::vector<Vertex> queue_;
  std::uint32_t round_ = 0;
};

std::vector<Vertex> merge_sorted(std::vector<Vertex> a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

BallRecord ball(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i, Vertex x) {
  return collect_ball(g, h, v, i, x, 0, false);
}

BallRecord truncated_ball(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i, Vertex x, double eps) {
  return collect_ball(g, h, v, i, x, eps, true);
}

std::vector<Vertex> truncated_cluster(const Graph& g, Vertex w, Vertex x, double eps, std::span<const Weight> bound) {
  if (w == x) return {};
  PrunedSearch search(g.num_vertices());
  std::vector<Vertex> out;
  search.run(g, w, x, eps, bound, [&](Vertex u) { out.push_back(u); });
  std::sort(out.begin(), out.end());
  return out;
}

WitnessSet witness_set(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i, double eps) {
  if (i < 0 || i + 1 >= h.k) throw std::invalid_argument("witness_set: level must be below the top");
  WitnessSet ws;
  const auto near = nearest_sample(g, h.levels[i + 1]);
  const Vertex u = near.vertex[v];
  if (u == kNoVertex) {
    ws.path = {v};
    ws.value = {kInf};
    return ws;
  }
  ws.path = shortest_path_tree(g, v).tree_path(u).vertices;
  const auto l = static_cast<std::int32_t>(ws.path.size()) - 1;
  ws.value.assign(ws.path.size(), kInf);
  for (std::int32_t j = 1; j <= l; ++j) {
    ws.value[j] = next_level_bound(h, i, single_source(g, v, ws.path[j]).dist);
    ws.h = std::max(ws.h, ws.value[j]);
  }
  for (std::int32_t start = 1; start <= l;) {
    Weight top = 0;
    for (std::int32_t j = start; j <= l; ++j) top = std::max(top, ws.value[j]);
    std::int32_t alpha = start;
    for (std::int32_t j = l; j >= start; --j) {
      if (ws.value[j] >= top / (1 + eps)) {
        alpha = j;
        break;
      }
    }
    ws.chosen.push_back(alpha);
    start = alpha + 1;
  }
  return ws;
}

bool TruncatedBallUnion::covered() const {
  return std::includes(cover.begin(), cover.end(), all_failures.begin(), all_failures.end()) &&
         std::includes(cover.begin(), cover.end(), path_failures.begin(), path_failures.end());
}

TruncatedBallUnion truncated_ball_union(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i,
                                        double eps) {
  TruncatedBallUnion out;
  out.witness = witness_set(g, h, v, i, eps);
  const auto intact = truncated_ball(g, h, v, i, kNoVertex, eps).members;
  out.all_failures = intact;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (x != v) out.all_failures = merge_sorted(std::move(out.all_failures), truncated_ball(g, h, v, i, x, eps).members);
  }
  out.path_failures = intact;
  for (std::size_t j = 1; j < out.witness.path.size(); ++j) {
    out.path_failures =
        merge_sorted(std::move(out.path_failures), truncated_ball(g, h, v, i, out.witness.path[j], eps).members);
  }
  out.cover = ball(g, h, v, i).members;
  for (auto j : out.witness.chosen) {
    out.cover = merge_sorted(std::move(out.cover), ball(g, h, v, i, out.witness.path[j]).members);
  }
  return out;
}

bool check_x1_x2(const Graph& g, const SampleHierarchy& h, const WitnessSet& ws, Vertex v, std::int32_t i,
                 double eps, std::int32_t j1, std::int32_t j2, bool* premise) {
  const auto l = static_cast<std::int32_t>(ws.path.size()) - 1;
  const bool ok = 0 < j1 && j1 < j2 && j2 <= l && ws.value[j1] <= (1 + eps) * ws.value[j2];
  if (premise) *premise = ok;
  if (!ok) return false;
  const auto lhs = truncated_ball(g, h, v, i, ws.path[j1], eps).members;
  const auto rhs = merge_sorted(ball(g, h, v, i).members, ball(g, h, v, i, ws.path[j2]).members);
  return std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end());
}

Vertex ClusterOracle::local(Vertex v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return kNoVertex;
  return static_cast<Vertex>(it - vertices.begin());
}

ApaspOracle ApaspOracle::build(const Graph& g, std::int32_t k, double epsilon, std::uint64_t seed) {
  if (!g.unweighted()) throw std::invalid_argument("build_apasp: unweighted required");
  if (!(epsilon > 0)) throw std::invalid_argument("build_apasp: epsilon must be positive");
  if (!is_connected(g)) throw std::invalid_argument("build_apasp: graph must be connected");
  const Vertex n = g.num_vertices();
  ApaspOracle o;
  o.epsilon_ = epsilon;
  o.hierarchy_ = sample_hierarchy(n, k, seed);
  const auto& h = o.hierarchy_;
  const double cluster_eps = epsilon / 8;
  const double nearest_eps = epsilon / 16;

  for (std::int32_t i = 0; i < k; ++i) {
    std::vector<Vertex> centers;
    for (Vertex w : h.levels[i]) {
      if (h.is_center(i, w)) centers.push_back(w);
    }
    const std::size_t first = o.clusters_.size();
    o.clusters_.resize(first + centers.size());
    if (i == k - 1) {
      // delta(v, ∅, x) = ∞: the whole graph is every top-level cluster.
      std::vector<Vertex> all(static_cast<std::size_t>(n));
      for (Vertex v = 0; v < n; ++v) all[v] = v;
      for (std::size_t c = 0; c < centers.size(); ++c) o.clusters_[first + c].vertices = all;
    } else {
      // bounds[0] is the intact graph, bounds[x + 1] is G - x.
      std::vector<std::vector<Weight>> bounds(static_cast<std::size_t>(n) + 1);
      parallel_for(bounds.size(), 0, [&](std::size_t s) {
        const Vertex x = s == 0 ? kNoVertex : static_cast<Vertex>(s - 1);
        bounds[s] = nearest_sample(g, h.levels[i + 1], x).dist;
      });
      parallel_for(centers.size(), 0, [&](std::size_t c) {
        const Vertex w = centers[c];
        PrunedSearch search(n);
        std::vector<char> member(static_cast<std::size_t>(n), 0);
        for (std::size_t s = 0; s < bounds.size(); ++s) {
          const Vertex x = s == 0 ? kNoVertex : static_cast<Vertex>(s - 1);
          if (x == w) continue;
          search.run(g, w, x, cluster_eps, bounds[s], [&](Vertex u) { member[u] = 1; });
        }
        auto& vs = o.clusters_[first + c].vertices;
        for (Vertex v = 0; v < n; ++v) {
          if (member[v]) vs.push_back(v);
        }
      });
    }
    for (std::size_t c = 0; c < centers.size(); ++c) {
      o.clusters_[first + c].center = centers[c];
      o.clusters_[first + c].level = i;
    }
  }

  parallel_for(o.clusters_.size(), 0, [&](std::size_t c) {
    auto& cl = o.clusters_[c];
    const auto sub = induced_subgraph(g, cl.vertices);
    cl.oracle = SsspEpsOracle::build(sub.graph, sub.to_local[cl.center], cluster_eps);
  });

  // N_i: a virtual root joined to every vertex of A_i.
  o.nearest_.resize(static_cast<std::size_t>(k));
  parallel_for(static_cast<std::size_t>(k - 1), 0, [&](std::size_t s) {
    const auto i = static_cast<std::int32_t>(s + 1);
    std::vector<Edge> edges = g.edges();
    for (Vertex a : h.levels[i]) edges.push_back({a, n, 1});
    o.nearest_[i] = SsspEpsOracle::build(Graph(n + 1, std::move(edges)), n, nearest_eps);
  });

  o.finalize();
  return o;
}

void ApaspOracle::finalize() {
  const auto n = static_cast<std::size_t>(num_vertices());
  center_index_.assign(static_cast<std::size_t>(hierarchy_.k), std::vector<std::int32_t>(n, -1));
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    center_index_[clusters_[c].level][clusters_[c].center] = static_cast<std::int32_t>(c);
  }
}

const ClusterOracle* ApaspOracle::cluster(std::int32_t level, Vertex w) const {
  if (level < 0 || level >= hierarchy_.k || w < 0 || w >= num_vertices()) return nullptr;
  const auto idx = center_index_[level][w];
  return idx < 0 ? nullptr : &clusters_[idx];
}

Vertex ApaspOracle::nearest(std::int32_t i, Vertex v, Vertex x, Weight* dist, std::vector<Vertex>* walk) const {
  if (i == 0) {
    *dist = 0;
    if (walk) *walk = {v};
    return v;
  }
  // The first hop of the reported walk names the A_i vertex.
  const auto a = nearest_[i].query(v, x, true);
  if (!a.reachable()) return kNoVertex;
  // Drop the virtual root: its edge into A_i costs 1.
  *dist = a.distance - 1;
  if (walk) walk->assign(a.path->vertices.begin() + 1, a.path->vertices.end());
  return a.path->vertices[1];
}

ReplacementAnswer ApaspOracle::query(Vertex u, Vertex v, Vertex x, bool want_path, ApaspQueryInfo* info) const {
  const Vertex n = num_vertices();
  if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("query_apasp: vertex out of range");
  if (x != kNoVertex && (x < 0 || x >= n)) throw std::invalid_argument("query_apasp: failed vertex out of range");
  if (u == x || v == x) throw std::invalid_argument("query_apasp: endpoint equals failed vertex");
  ApaspQueryInfo local_info;
  ApaspQueryInfo& stats = info ? *info : local_info;
  stats = {};
  ReplacementAnswer best;
  if (u == v) {
    best.distance = 0;
    if (want_path) best.path = Path{{u}, 0};
    return best;
  }

  Vertex a = u;
  Vertex b = v;
  Vertex w = u;
  Weight to_center = 0;
  std::vector<Vertex> center_walk{u};  // w ... a
  for (std::int32_t i = 0; i < hierarchy_.k; ++i) {
    const ClusterOracle* cl = w == x ? nullptr : cluster(i, w);
    const Vertex lb = cl ? cl->local(b) : kNoVertex;
    if (lb != kNoVertex) {
      ++stats.probes;
      const Vertex lx = x == kNoVertex ? kNoVertex : cl->local(x);
      const auto r = cl->oracle.query(lb, lx, want_path);
      if (r.reachable() && to_center + r.distance < best.distance) {
        best.distance = to_center + r.distance;
        stats.best_level = i;
        if (want_path) {
          std::vector<Vertex> walk(center_walk.rbegin(), center_walk.rend());
          for (std::size_t j = 1; j < r.path->vertices.size(); ++j) walk.push_back(cl->vertices[r.path->vertices[j]]);
          if (walk.front() != u) std::reverse(walk.begin(), walk.end());
          best.path = Path{std::move(walk), best.distance};
        }
      }
    }
    if (i + 1 == hierarchy_.k) break;
    std::swap(a, b);
    ++stats.probes;
    w = nearest(i + 1, a, x, &to_center, want_path ? &center_walk : nullptr);
    if (w == kNoVertex) break;
  }
  return best;
}

ApaspStats ApaspOracle::stats() const {
  ApaspStats s;
  s.centers = clusters_.size();
  for (const auto& c : clusters_) {
    s.cluster_vertices += c.vertices.size();
    s.sub_oracle_entries += c.oracle.stats().entries;
  }
  for (const auto& nb : nearest_) s.nearest_entries += nb.stats().entries;
  s.entries = s.cluster_vertices + s.sub_oracle_entries + s.nearest_entries +
              hierarchy_.rank.size() * static_cast<std::size_t>(hierarchy_.k);
  return s;
}

}  // namespace dso
