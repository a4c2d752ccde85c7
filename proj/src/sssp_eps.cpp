#include "dsoracle/sssp_eps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dso {

std::size_t SpecialVertexSet::count() const {
  return static_cast<std::size_t>(std::count(special.begin(), special.end(), char{1}));
}

SpecialVertexSet compute_special_vertices(const ShortestPathTree& t, double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("special vertices: epsilon must lie in (0, 1)");
  SpecialVertexSet s;
  s.epsilon = epsilon;
  const Vertex n = t.size();
  const std::int32_t h = t.height();
  for (int i = 0;; ++i) {
    const auto level = static_cast<std::int32_t>(std::floor(std::pow(1 + epsilon, i)));
    if (level > h) break;
    if (s.levels.empty() || s.levels.back() != level) s.levels.push_back(level);
  }
  std::vector<char> special_level(static_cast<std::size_t>(std::max(h, 0)) + 1, 0);
  for (auto l : s.levels) special_level[l] = 1;

  s.special.assign(n, 0);
  s.nearest.assign(n, kNoVertex);
  s.owner.assign(n, kNoVertex);
  s.claims.assign(n, 0);
  for (std::int32_t i = 0; i < t.num_reachable(); ++i) {
    const Vertex v = t.at_preorder(i);
    const std::int32_t l = t.level(v);
    s.special[v] = special_level[l] && t.subtree_size(v) >= epsilon * l;
    if (v != t.root()) s.nearest[v] = s.owner[t.parent(v)];
    s.owner[v] = s.special[v] ? v : s.nearest[v];
    if (s.owner[v] != kNoVertex) ++s.claims[s.owner[v]];
  }
  return s;
}

SpecialLemmaReport check_special_lemmas(const ShortestPathTree& t, const SpecialVertexSet& s) {
  SpecialLemmaReport r;
  const double eps = s.epsilon;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (!t.reachable(v)) continue;
    if (s.is_special(v)) {
      ++r.claim_checked;
      if (s.claims[v] < eps * t.level(v)) ++r.claim_violations;
    } else if (s.nearest[v] != kNoVertex) {
      ++r.distance_checked;
      // Ancestors in a BFS tree: graph distance equals the level difference.
      const double d = t.level(v) - t.level(s.nearest[v]);
      if (d > (2 * eps / (1 + eps)) * t.level(v)) ++r.distance_violations;
    }
  }
  return r;
}

DetourClass classify_detour(const ShortestPathTree& t, Vertex v, Vertex x, Vertex v_prime,
                            const SearchResult& avoiding, bool with_middle) {
  if (x == v || !t.reachable(x) || !t.is_ancestor(x, v)) {
    throw std::invalid_argument("classify_detour: x must be a proper ancestor of v");
  }
  DetourClass out;
  const auto& d = avoiding.dist;
  if (d[v] == kInf) return out;
  out.exact = d[v];
  // d_x(q) - dist(q) is non-increasing downward; the topmost q on P(x, v]
  // sharing v's key is where a shortest replacement path can rejoin the tree.
  const Weight key = d[v] - t.dist(v);
  Vertex b = v;
  for (Vertex q = t.parent(v); q != x && d[q] - t.dist(q) == key; q = t.parent(q)) b = q;
  out.b = b;
  std::vector<Vertex> chain{b};
  Vertex u = b;
  while (!t.is_ancestor(u, x)) {
    u = avoiding.parent[u];
    chain.push_back(u);
  }
  out.a = u;
  const std::int32_t split = v_prime == kNoVertex ? -1 : t.level(v_prime);
  out.kind = t.level(b) > split ? DetourKind::kTypeII : DetourKind::kTypeI;
  if (with_middle) out.middle.assign(chain.rbegin(), chain.rend());
  return out;
}

DetourClass classify_detour(const Graph& g, const ShortestPathTree& t, Vertex v, Vertex x, Vertex v_prime) {
  return classify_detour(t, v, x, v_prime, single_source(g, t.root(), x), true);
}

namespace {

Vertex ancestor_at_level(const ShortestPathTree& t, Vertex v, std::int32_t level) {
  while (t.level(v) > level) v = t.parent(v);
  return v;
}

}  // namespace

SsspEpsOracle SsspEpsOracle::build(const Graph& g, Vertex source, double epsilon) {
  if (!g.unweighted()) throw std::invalid_argument("build_sssp_eps: unweighted required");
  if (!(epsilon > 0 && epsilon < 6)) throw std::invalid_argument("build_sssp_eps: epsilon must lie in (0, 6)");
  SsspEpsOracle o;
  o.epsilon_ = epsilon;
  o.base_ = Sssp3Oracle::build(g, source);
  const auto& t = o.base_.tree();
  const double eps = epsilon / 6;
  o.specials_ = compute_special_vertices(t, eps);
  const auto& s = o.specials_;
  const Vertex n = t.size();

  o.record_index_.assign(n, -1);
  for (std::int32_t i = 0; i < t.num_reachable(); ++i) {
    const Vertex w = t.at_preorder(i);
    if (!s.is_special(w)) continue;
    o.record_index_[w] = static_cast<std::int32_t>(o.records_.size());
    SpecialRecord rec;
    rec.vertex = w;
    rec.previous = s.nearest[w];
    rec.entries.resize(static_cast<std::size_t>(t.level(w) - 1));
    o.records_.push_back(std::move(rec));
  }

  // Classify every failure above v' with one search per failed vertex; each
  // (w, level(x)) slot has a single writer.
  parallel_for(static_cast<std::size_t>(t.num_reachable()), 0, [&](std::size_t i) {
    const Vertex x = t.at_preorder(static_cast<std::int32_t>(i));
    if (x == t.root()) return;
    std::vector<std::int32_t> targets;
    for (std::int32_t p = t.preorder(x) + 1; p <= t.last_preorder(x); ++p) {
      const Vertex w = t.at_preorder(p);
      if (s.is_special(w) && s.nearest[w] != kNoVertex && t.level(s.nearest[w]) > t.level(x)) {
        targets.push_back(o.record_index_[w]);
      }
    }
    if (targets.empty()) return;
    const SearchResult avoid = single_source(g, t.root(), x);
    for (auto idx : targets) {
      auto& rec = o.records_[idx];
      const Vertex w = rec.vertex;
      const DetourClass cls = classify_detour(t, w, x, rec.previous, avoid, false);
      DetourEntry& e = rec.entries[static_cast<std::size_t>(t.level(x) - 1)];
      e.kind = cls.kind;
      e.value = cls.exact;
      if (cls.kind == DetourKind::kTypeI) {
        Vertex u = w;
        while (s.nearest[u] != kNoVertex && t.level(s.nearest[u]) >= t.level(cls.b)) u = s.nearest[u];
        e.ref = u;
      } else if (cls.kind == DetourKind::kTypeII && cls.exact >= t.level(w) / eps) {
        e.kind = DetourKind::kLong;
      }
    }
  });

  // Geometric pruning along each special vertex's path.
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> wanted(n);  // x -> (record, detour)
  for (std::size_t ri = 0; ri < o.records_.size(); ++ri) {
    auto& rec = o.records_[ri];
    Weight kept = kInf;
    for (std::size_t l = 0; l < rec.entries.size(); ++l) {
      auto& e = rec.entries[l];
      if (e.kind != DetourKind::kTypeII) continue;
      if (rec.detours.empty() || e.value < kept / (1 + eps)) {
        kept = e.value;
        StoredDetour d;
        d.failure_level = static_cast<std::int32_t>(l + 1);
        d.length = e.value;
        const Vertex x = ancestor_at_level(t, rec.vertex, d.failure_level);
        wanted[x].emplace_back(static_cast<std::int32_t>(ri), static_cast<std::int32_t>(rec.detours.size()));
        rec.detours.push_back(std::move(d));
      }
      e.detour = static_cast<std::int32_t>(rec.detours.size()) - 1;
    }
  }

  parallel_for(static_cast<std::size_t>(n), 0, [&](std::size_t xi) {
    if (wanted[xi].empty()) return;
    const auto x = static_cast<Vertex>(xi);
    const SearchResult avoid = single_source(g, t.root(), x);
    for (auto [ri, di] : wanted[xi]) {
      auto& rec = o.records_[ri];
      rec.detours[di].middle = classify_detour(t, rec.vertex, x, rec.previous, avoid, true).middle;
    }
  });

  o.fail_trees_.assign(n, {});
  const DownEstimate est = [&o](const FailureRecord& rec, Vertex u) { return o.down_distance(rec, u); };
  parallel_for(static_cast<std::size_t>(n), 0, [&](std::size_t xi) {
    const FailureRecord* rec = o.base_.record(static_cast<Vertex>(xi));
    if (rec) o.fail_trees_[xi] = grow_side_tree(g, t, *rec, est);
  });

  o.finalize();
  return o;
}

void SsspEpsOracle::finalize() {
  const auto& t = base_.tree();
  record_index_.assign(t.size(), -1);
  for (std::size_t i = 0; i < records_.size(); ++i) record_index_[records_[i].vertex] = static_cast<std::int32_t>(i);

  stats_ = {};
  stats_.base = base_.stats();
  stats_.special = records_.size();
  stats_.special_levels = specials_.levels.size();
  for (const auto& r : records_) {
    stats_.detour_entries += r.entries.size();
    stats_.stored_detours += r.detours.size();
    for (const auto& d : r.detours) stats_.stored_detour_vertices += d.middle.size();
    // Exact type-II values must not increase with the failure level.
    Weight last = kInf;
    std::size_t type2 = 0;
    for (const auto& e : r.entries) {
      if (e.kind != DetourKind::kTypeII && e.kind != DetourKind::kLong) continue;
      ++type2;
      if (e.value > last) ++stats_.monotonicity_violations;
      last = e.value;
    }
    if (type2 > 1) ++stats_.type2_sequences;
  }
  for (const auto& f : fail_trees_) stats_.eps_side_nodes += f.size();
  stats_.entries = stats_.base.entries + stats_.special + stats_.detour_entries + stats_.stored_detours +
                   stats_.stored_detour_vertices + stats_.eps_side_nodes;
  stats_.lemmas = check_special_lemmas(t, specials_);
}

const SpecialRecord* SsspEpsOracle::special_record(Vertex v) const {
  if (v < 0 || v >= static_cast<Vertex>(record_index_.size()) || record_index_[v] < 0) return nullptr;
  return &records_[record_index_[v]];
}

Weight SsspEpsOracle::special_distance(Vertex w, Vertex x) const {
  const auto& t = base_.tree();
  const SpecialRecord& rec = *special_record(w);
  const DetourEntry& e = rec.at_level(t.level(x));
  switch (e.kind) {
    case DetourKind::kUnreachable:
      return kInf;
    case DetourKind::kTypeI: {
      const Weight up = special_distance(e.ref, x);
      return up == kInf ? kInf : up + (t.level(w) - t.level(e.ref));
    }
    case DetourKind::kTypeII:
      return rec.detours[e.detour].length;
    case DetourKind::kNear:
    case DetourKind::kLong:
      break;
  }
  return base_.down_distance(*base_.record(x), w);
}

std::vector<Vertex> SsspEpsOracle::special_walk(Vertex w, Vertex x) const {
  const auto& t = base_.tree();
  const SpecialRecord& rec = *special_record(w);
  const DetourEntry& e = rec.at_level(t.level(x));
  std::vector<Vertex> walk;
  switch (e.kind) {
    case DetourKind::kUnreachable:
      return walk;
    case DetourKind::kTypeI:
      walk = special_walk(e.ref, x);
      t.append_descent(e.ref, w, walk);
      return walk;
    case DetourKind::kTypeII: {
      const auto& d = rec.detours[e.detour];
      walk = t.tree_path(d.middle.front()).vertices;
      walk.insert(walk.end(), d.middle.begin() + 1, d.middle.end());
      t.append_descent(d.middle.back(), w, walk);
      return walk;
    }
    case DetourKind::kNear:
    case DetourKind::kLong:
      break;
  }
  return base_.down_walk(*base_.record(x), w);
}

Vertex SsspEpsOracle::pick_special(const FailureRecord& rec, Vertex v, Weight* via) const {
  const auto& t = base_.tree();
  const double eps = specials_.epsilon;
  // Condition C: the chain successor is already close to v.
  if (t.level(v) - t.level(rec.down_child) <= (eps / 2) * t.level(v)) return kNoVertex;
  const Vertex w = specials_.owner[v];
  if (w == kNoVertex || t.level(w) <= t.level(rec.failed)) return kNoVertex;
  const Weight d = special_distance(w, rec.failed);
  if (d == kInf) return kNoVertex;
  *via = d + (t.level(v) - t.level(w));
  return *via < base_.down_distance(rec, v) ? w : kNoVertex;
}

Weight SsspEpsOracle::down_distance(const FailureRecord& rec, Vertex v) const {
  Weight via = kInf;
  if (pick_special(rec, v, &via) != kNoVertex) return via;
  return base_.down_distance(rec, v);
}

std::vector<Vertex> SsspEpsOracle::down_walk(const FailureRecord& rec, Vertex v) const {
  Weight via = kInf;
  const Vertex w = pick_special(rec, v, &via);
  if (w == kNoVertex) return base_.down_walk(rec, v);
  auto walk = special_walk(w, rec.failed);
  base_.tree().append_descent(w, v, walk);
  return walk;
}

ReplacementAnswer SsspEpsOracle::query(Vertex v, Vertex x, bool want_path) const {
  const auto& t = base_.tree();
  check_single_source_query(t, v, x);
  if (!t.reachable(v)) return {};
  if (x == kNoVertex || !t.reachable(x) || t.lca(v, x) != x) return tree_answer(t, v, want_path);
  const FailureRecord& rec = *base_.record(x);
  ReplacementAnswer ans;
  if (rec.down_child != kNoVertex && t.is_ancestor(rec.down_child, v)) {
    ans.distance = down_distance(rec, v);
    if (want_path && ans.reachable()) ans.path = Path{down_walk(rec, v), ans.distance};
  } else {
    const auto& tree = fail_trees_[x];
    ans.distance = tree[rec.side_index(t, v)].dist;
    if (want_path && ans.reachable()) {
      auto walk = base_.side_walk(rec, tree, v, [&](Vertex u) { return down_walk(rec, u); });
      ans.path = Path{std::move(walk), ans.distance};
    }
  }
  return ans;
}

}  // namespace dso
