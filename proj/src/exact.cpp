#include "dsoracle/exact.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "dsoracle/shortest_path_tree.hpp"

namespace dso {

namespace {

// Nested calls run inline so per-item work may itself use parallel_for.
thread_local bool inside_pool = false;

}  // namespace

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1 || inside_pool) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        inside_pool = true;
        try {
          for (std::size_t i = next++; i < count; i = next++) body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

ReplacementAnswer exact_replacement(const Graph& g, Vertex u, Vertex v, Vertex x) {
  if (!g.contains(u) || !g.contains(v) || (x != kNoVertex && !g.contains(x))) {
    throw std::invalid_argument("exact_replacement: vertex out of range");
  }
  if (u == x || v == x) throw std::invalid_argument("exact_replacement: endpoint equals failed vertex");
  auto sr = single_source(g, u, x);
  ReplacementAnswer ans;
  ans.distance = sr.dist[v];
  if (ans.reachable()) {
    Path p;
    for (Vertex w = v;; w = sr.parent[w]) {
      p.vertices.push_back(w);
      if (w == u) break;
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    p.length = ans.distance;
    ans.path = std::move(p);
  }
  return ans;
}

std::vector<Weight> distances_avoiding(const Graph& g, Vertex source, Vertex x) {
  return single_source(g, source, x).dist;
}

void ReplacementTable::write_csv(std::ostream& out) const {
  out << "v,x,distance\n";
  for (Vertex x = 0; x < n_; ++x) {
    if (x == source_) continue;
    for (Vertex v = 0; v < n_; ++v) {
      if (v == x) continue;
      out << v << ',' << x << ',';
      if (at(v, x) == kInf) {
        out << "inf";
      } else {
        out << at(v, x);
      }
      out << '\n';
    }
  }
}

ReplacementTable all_replacement_distances(const Graph& g, Vertex r, unsigned threads) {
  const Vertex n = g.num_vertices();
  if (!g.contains(r)) throw std::invalid_argument("all_replacement_distances: source out of range");
  ReplacementTable table(n, r);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t xi) {
    const auto x = static_cast<Vertex>(xi);
    if (x == r) return;
    auto d = distances_avoiding(g, r, x);
    for (Vertex v = 0; v < n; ++v) table.at(v, x) = d[v];
  });
  return table;
}

AllPairsReplacement::AllPairsReplacement(const Graph& g, unsigned threads) : n_(g.num_vertices()) {
  const auto n = static_cast<std::size_t>(n_);
  d_.assign((n + 1) * n * n, kInf);
  parallel_for(n + 1, threads, [&](std::size_t slot) {
    const Vertex x = slot == n ? kNoVertex : static_cast<Vertex>(slot);
    for (Vertex u = 0; u < n_; ++u) {
      if (u == x) continue;
      auto d = distances_avoiding(g, u, x);
      std::copy(d.begin(), d.end(), d_.begin() + static_cast<std::ptrdiff_t>((slot * n + u) * n));
    }
  });
}

}  // namespace dso
