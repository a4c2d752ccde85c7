#include "dsoracle/generate.hpp"

#include <stdexcept>
#include <string_view>
#include <vector>

namespace dso {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

Weight draw_weight(Rng& rng, WeightRange range) {
  if (range.lo < 1 || range.hi < range.lo) throw std::invalid_argument("weight range must satisfy 1 <= lo <= hi");
  if (range.lo == range.hi) return static_cast<Weight>(range.lo);
  return static_cast<Weight>(rng.uniform_int(range.lo, range.hi));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& s : s_) s = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

std::uint64_t sub_seed(std::uint64_t base, std::string_view name, std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ULL ^ base;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  h ^= index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return splitmix64(h);
}

bool is_connected(const Graph& g) {
  const Vertex n = g.num_vertices();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  Vertex count = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(u)) {
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        ++count;
        stack.push_back(nb.to);
      }
    }
  }
  return count == n;
}

Graph generate_gnp(Vertex n, double p, std::uint64_t seed, WeightRange weights, int max_retries) {
  if (n < 1) throw std::invalid_argument("gnp: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p must lie in [0, 1]");
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Rng rng(sub_seed(seed, "gnp", static_cast<std::uint64_t>(attempt)));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (rng.uniform() < p) edges.push_back({u, v, draw_weight(rng, weights)});
      }
    }
    Graph g(n, std::move(edges));
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("gnp: no connected sample after " + std::to_string(max_retries) +
                           " attempts (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

Graph generate_grid(Vertex rows, Vertex cols, WeightRange weights, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid: rows and cols must be >= 1");
  Rng rng(sub_seed(seed, "grid"));
  std::vector<Edge> edges;
  auto id = [cols](Vertex r, Vertex c) { return r * cols + c; };
  for (Vertex r = 0; r < rows; ++r) {
    for (Vertex c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), draw_weight(rng, weights)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), draw_weight(rng, weights)});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph generate_cycle(Vertex n, WeightRange weights, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
  Rng rng(sub_seed(seed, "cycle"));
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, draw_weight(rng, weights)});
  return Graph(n, std::move(edges));
}

Graph generate_path(Vertex n, WeightRange weights, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("path: n must be >= 1");
  Rng rng(sub_seed(seed, "path"));
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, draw_weight(rng, weights)});
  return Graph(n, std::move(edges));
}

Graph generate_star(Vertex n, WeightRange weights, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("star: n must be >= 1");
  Rng rng(sub_seed(seed, "star"));
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({0, v, draw_weight(rng, weights)});
  return Graph(n, std::move(edges));
}

}  // namespace dso
