#include "dsoracle/container.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dso {

using json = nlohmann::json;

namespace {

[[noreturn]] void format_error(const std::string& what) {
  throw ContainerError(ContainerError::Reason::kFormat, "malformed container: " + what);
}

json weight_to_json(Weight w) { return std::isinf(w) ? json(nullptr) : json(w); }

Weight weight_from_json(const json& j) {
  if (j.is_null()) return kInf;
  if (!j.is_number()) format_error("expected a distance");
  return j.get<double>();
}

Vertex vertex_from_json(const json& j, Vertex n, bool allow_none) {
  if (!j.is_number_integer()) format_error("expected a vertex id");
  const auto v = j.get<std::int64_t>();
  if (allow_none && v == kNoVertex) return kNoVertex;
  if (v < 0 || v >= n) format_error("vertex id out of range");
  return static_cast<Vertex>(v);
}

std::vector<Vertex> vertices_from_json(const json& j, Vertex n) {
  if (!j.is_array()) format_error("expected a vertex list");
  std::vector<Vertex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(vertex_from_json(e, n, false));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) format_error(std::string("expected an object around '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) format_error(std::string("missing '") + key + "'");
  return *it;
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) format_error(std::string("'") + key + "' must be an array");
  return a;
}

template <typename T>
T number_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) format_error(std::string("'") + key + "' must be a number");
  return v.get<T>();
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t payload_hash(std::int32_t version, const std::string& kind, const json& params, const json& payload) {
  std::uint64_t h = fnv1a(std::to_string(version));
  h = fnv1a("\n" + kind + "\n", h);
  h = fnv1a(params.dump(), h);
  return fnv1a("\n" + payload.dump(), h);
}

json side_tree_to_json(const std::vector<SideTreeNode>& nodes) {
  json a = json::array();
  for (const auto& s : nodes) {
    a.push_back({weight_to_json(s.dist), s.parent, s.entry, static_cast<int>(s.side)});
  }
  return a;
}

std::vector<SideTreeNode> side_tree_from_json(const json& a, Vertex n) {
  if (!a.is_array()) format_error("side tree must be an array");
  std::vector<SideTreeNode> out;
  out.reserve(a.size());
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 4 || !e[3].is_number_integer()) format_error("bad side tree node");
    SideTreeNode s;
    s.dist = weight_from_json(e[0]);
    s.parent = vertex_from_json(e[1], n, true);
    s.entry = vertex_from_json(e[2], n, true);
    const auto side = e[3].get<int>();
    if (side < 0 || side > 2) format_error("bad side tag");
    s.side = static_cast<EntrySide>(side);
    out.push_back(s);
  }
  return out;
}

}  // namespace

// Encodes only primary state; trees, decompositions, indices and counters are
// rebuilt on decode so that a decoded oracle is indistinguishable from a built one.
struct OracleCodec {
  static json encode(const Sssp3Oracle& o) {
    const auto& t = o.tree_;
    json dist = json::array();
    for (Weight d : t.distances()) dist.push_back(weight_to_json(d));
    json paths = json::array();
    for (const auto& s : o.structures_) {
      json records = json::array();
      for (const auto& r : s.records) {
        json jump = nullptr;
        if (r.jump) jump = {r.jump->from, r.jump->to, weight_to_json(r.jump->cost), r.jump->from_side};
        records.push_back({{"failed", r.failed},
                           {"down_child", r.down_child},
                           {"jump", jump},
                           {"side_begin", r.side_begin},
                           {"side_tree", side_tree_to_json(r.side_tree)},
                           {"fail_tree", side_tree_to_json(r.fail_tree)}});
      }
      paths.push_back({{"path_id", s.path_id}, {"records", records}});
    }
    return {{"tree", {{"root", t.root()}, {"parent", t.parents()}, {"dist", dist}}}, {"paths", paths}};
  }

  static Sssp3Oracle decode_sssp3(const json& j) {
    Sssp3Oracle o;
    const json& tj = field(j, "tree");
    const json& parent = array_field(tj, "parent");
    const json& dist = array_field(tj, "dist");
    const auto n = static_cast<Vertex>(parent.size());
    if (dist.size() != parent.size() || n == 0) format_error("tree arrays differ in length");
    std::vector<Vertex> par;
    std::vector<Weight> dv;
    for (Vertex v = 0; v < n; ++v) {
      par.push_back(vertex_from_json(parent[v], n, true));
      dv.push_back(weight_from_json(dist[v]));
    }
    try {
      o.tree_ = ShortestPathTree(vertex_from_json(field(tj, "root"), n, false), std::move(par), std::move(dv));
    } catch (const std::invalid_argument& e) {
      format_error(e.what());
    }
    o.decomposition_ = decompose_tree(o.tree_);
    const json& paths = array_field(j, "paths");
    if (paths.size() != o.decomposition_.paths().size()) format_error("path count does not match the tree");
    const std::int32_t reach = o.tree_.num_reachable();
    for (const auto& pj : paths) {
      PathFaultStructure s;
      s.path_id = number_field<std::int32_t>(pj, "path_id");
      for (const auto& rj : array_field(pj, "records")) {
        FailureRecord r;
        r.failed = vertex_from_json(field(rj, "failed"), n, false);
        r.down_child = vertex_from_json(field(rj, "down_child"), n, true);
        const json& jump = field(rj, "jump");
        if (!jump.is_null()) {
          if (!jump.is_array() || jump.size() != 4 || !jump[3].is_boolean()) format_error("bad jump edge");
          r.jump = JumpEdge{vertex_from_json(jump[0], n, false), vertex_from_json(jump[1], n, false),
                            weight_from_json(jump[2]), jump[3].get<bool>()};
        }
        r.side_begin = number_field<std::int32_t>(rj, "side_begin");
        r.side_tree = side_tree_from_json(field(rj, "side_tree"), n);
        r.fail_tree = side_tree_from_json(field(rj, "fail_tree"), n);
        if (!o.tree_.reachable(r.failed) || r.side_begin < 0 ||
            static_cast<std::size_t>(r.side_begin) + r.side_tree.size() > static_cast<std::size_t>(reach) ||
            r.fail_tree.size() > r.side_tree.size()) {
          format_error("failure record does not fit the tree");
        }
        s.records.push_back(std::move(r));
      }
      o.structures_.push_back(std::move(s));
    }
    o.finalize();
    return o;
  }

  static json encode(const SsspEpsOracle& o) {
    json records = json::array();
    for (const auto& r : o.records_) {
      json entries = json::array();
      for (const auto& e : r.entries) {
        entries.push_back({static_cast<int>(e.kind), weight_to_json(e.value), e.ref, e.detour});
      }
      json detours = json::array();
      for (const auto& d : r.detours) detours.push_back({d.failure_level, weight_to_json(d.length), d.middle});
      records.push_back({{"vertex", r.vertex}, {"previous", r.previous}, {"entries", entries}, {"detours", detours}});
    }
    json fail_trees = json::array();
    for (const auto& f : o.fail_trees_) fail_trees.push_back(side_tree_to_json(f));
    return {{"epsilon", o.epsilon_}, {"base", encode(o.base_)}, {"records", records}, {"fail_trees", fail_trees}};
  }

  static SsspEpsOracle decode_sssp_eps(const json& j) {
    SsspEpsOracle o;
    o.epsilon_ = number_field<double>(j, "epsilon");
    if (!(o.epsilon_ > 0 && o.epsilon_ < 6)) format_error("epsilon out of range");
    o.base_ = decode_sssp3(field(j, "base"));
    const auto& t = o.base_.tree();
    const Vertex n = t.size();
    o.specials_ = compute_special_vertices(t, o.epsilon_ / 6);
    for (const auto& rj : array_field(j, "records")) {
      SpecialRecord r;
      r.vertex = vertex_from_json(field(rj, "vertex"), n, false);
      r.previous = vertex_from_json(field(rj, "previous"), n, true);
      if (!o.specials_.is_special(r.vertex)) format_error("record at a non-special vertex");
      for (const auto& e : array_field(rj, "entries")) {
        if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[3].is_number_integer()) {
          format_error("bad detour entry");
        }
        DetourEntry d;
        const auto kind = e[0].get<int>();
        if (kind < 0 || kind > 4) format_error("bad detour kind");
        d.kind = static_cast<DetourKind>(kind);
        d.value = weight_from_json(e[1]);
        d.ref = vertex_from_json(e[2], n, true);
        d.detour = e[3].get<std::int32_t>();
        r.entries.push_back(d);
      }
      if (r.entries.size() != static_cast<std::size_t>(t.level(r.vertex) - 1)) format_error("entry count mismatch");
      for (const auto& dj : array_field(rj, "detours")) {
        if (!dj.is_array() || dj.size() != 3 || !dj[0].is_number_integer()) format_error("bad stored detour");
        r.detours.push_back({dj[0].get<std::int32_t>(), weight_from_json(dj[1]), vertices_from_json(dj[2], n)});
      }
      for (const auto& e : r.entries) {
        if (e.detour < -1 || e.detour >= static_cast<std::int32_t>(r.detours.size())) format_error("bad detour index");
      }
      o.records_.push_back(std::move(r));
    }
    const json& fail_trees = array_field(j, "fail_trees");
    if (fail_trees.size() != static_cast<std::size_t>(n)) format_error("fail tree count mismatch");
    for (const auto& f : fail_trees) o.fail_trees_.push_back(side_tree_from_json(f, n));
    o.finalize();
    return o;
  }

  static json encode(const ApaspOracle& o) {
    const auto& h = o.hierarchy_;
    json clusters = json::array();
    for (const auto& c : o.clusters_) {
      clusters.push_back(
          {{"center", c.center}, {"level", c.level}, {"vertices", c.vertices}, {"oracle", encode(c.oracle)}});
    }
    json nearest = json::array();
    for (std::size_t i = 0; i < o.nearest_.size(); ++i) nearest.push_back(i == 0 ? json(nullptr) : encode(o.nearest_[i]));
    return {{"epsilon", o.epsilon_},
            {"hierarchy", {{"k", h.k}, {"seed", h.seed}, {"attempts", h.attempts}, {"levels", h.levels}}},
            {"clusters", clusters},
            {"nearest", nearest}};
  }

  static ApaspOracle decode_apasp(const json& j) {
    ApaspOracle o;
    o.epsilon_ = number_field<double>(j, "epsilon");
    const json& hj = field(j, "hierarchy");
    auto& h = o.hierarchy_;
    h.k = number_field<std::int32_t>(hj, "k");
    h.seed = number_field<std::uint64_t>(hj, "seed");
    h.attempts = number_field<std::uint32_t>(hj, "attempts");
    const json& levels = array_field(hj, "levels");
    if (h.k < 2 || levels.size() != static_cast<std::size_t>(h.k) || !levels[0].is_array()) {
      format_error("bad sample hierarchy");
    }
    const auto n = static_cast<Vertex>(levels[0].size());
    h.rank.assign(n, -1);
    for (std::int32_t i = 0; i < h.k; ++i) {
      h.levels.push_back(vertices_from_json(levels[i], n));
      for (Vertex v : h.levels.back()) {
        if (h.rank[v] != i - 1) format_error("sample levels are not nested");
        h.rank[v] = i;
      }
    }
    for (const auto& cj : array_field(j, "clusters")) {
      ClusterOracle c;
      c.center = vertex_from_json(field(cj, "center"), n, false);
      c.level = number_field<std::int32_t>(cj, "level");
      c.vertices = vertices_from_json(field(cj, "vertices"), n);
      c.oracle = decode_sssp_eps(field(cj, "oracle"));
      if (c.level < 0 || c.level >= h.k || !h.is_center(c.level, c.center) ||
          c.oracle.num_vertices() != static_cast<Vertex>(c.vertices.size())) {
        format_error("cluster does not match the hierarchy");
      }
      o.clusters_.push_back(std::move(c));
    }
    const json& nearest = array_field(j, "nearest");
    if (nearest.size() != static_cast<std::size_t>(h.k)) format_error("nearest index count mismatch");
    o.nearest_.resize(nearest.size());
    for (std::size_t i = 1; i < nearest.size(); ++i) {
      o.nearest_[i] = decode_sssp_eps(nearest[i]);
      if (o.nearest_[i].num_vertices() != n + 1) format_error("nearest index size mismatch");
    }
    o.finalize();
    return o;
  }
};

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::kSssp3:
      return "sssp3";
    case OracleKind::kSsspEps:
      return "sssp-eps";
    case OracleKind::kApasp:
      return "apasp";
  }
  return "unknown";
}

OracleKind parse_oracle_kind(std::string_view name) {
  if (name == "sssp3") return OracleKind::kSssp3;
  if (name == "sssp-eps") return OracleKind::kSsspEps;
  if (name == "apasp") return OracleKind::kApasp;
  throw std::invalid_argument("unknown oracle kind '" + std::string(name) + "'");
}

namespace {

json params_to_json(OracleKind kind, const OracleParams& p) {
  switch (kind) {
    case OracleKind::kSssp3:
      return {{"source", p.source}};
    case OracleKind::kSsspEps:
      return {{"source", p.source}, {"epsilon", p.epsilon}};
    case OracleKind::kApasp:
      return {{"epsilon", p.epsilon}, {"k", p.k}, {"seed", p.seed}};
  }
  return json::object();
}

OracleParams params_from_json(OracleKind kind, const json& j) {
  OracleParams p;
  if (kind != OracleKind::kApasp) p.source = number_field<Vertex>(j, "source");
  if (kind != OracleKind::kSssp3) p.epsilon = number_field<double>(j, "epsilon");
  if (kind == OracleKind::kApasp) {
    p.k = number_field<std::int32_t>(j, "k");
    p.seed = number_field<std::uint64_t>(j, "seed");
  }
  return p;
}

Fingerprint fingerprint_of(const Graph& g) { return {g.num_vertices(), g.num_edges(), g.content_hash()}; }

}  // namespace

OracleContainer build_container(const Graph& g, OracleKind kind, const OracleParams& params) {
  OracleContainer c;
  c.kind = kind;
  c.params = params;
  c.fingerprint = fingerprint_of(g);
  switch (kind) {
    case OracleKind::kSssp3:
      c.oracle = Sssp3Oracle::build(g, params.source);
      break;
    case OracleKind::kSsspEps:
      c.oracle = SsspEpsOracle::build(g, params.source, params.epsilon);
      break;
    case OracleKind::kApasp:
      c.oracle = ApaspOracle::build(g, params.k, params.epsilon, params.seed);
      break;
  }
  return c;
}

std::string save_container(const OracleContainer& c) {
  const std::string kind = to_string(c.kind);
  json payload = std::visit([](const auto& o) { return OracleCodec::encode(o); }, c.oracle);
  json params = params_to_json(c.kind, c.params);
  json doc = {{"format_version", kContainerVersion},
              {"kind", kind},
              {"params", params},
              {"fingerprint",
               {{"n", c.fingerprint.n},
                {"m", c.fingerprint.m},
                {"graph_hash", hex64(c.fingerprint.graph_hash)},
                {"payload_hash", hex64(payload_hash(kContainerVersion, kind, params, payload))}}},
              {"payload", std::move(payload)}};
  return doc.dump() + "\n";
}

OracleContainer load_container(std::string_view text, const Graph* graph) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    format_error(e.what());
  }
  try {
    const auto version = number_field<std::int32_t>(doc, "format_version");
    if (version != kContainerVersion) {
      throw ContainerError(ContainerError::Reason::kFormat,
                           "unsupported container version " + std::to_string(version) + " (expected " +
                               std::to_string(kContainerVersion) + ")");
    }
    const json& kind_j = field(doc, "kind");
    if (!kind_j.is_string()) format_error("'kind' must be a string");
    OracleContainer c;
    try {
      c.kind = parse_oracle_kind(kind_j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      format_error(e.what());
    }
    const json& params = field(doc, "params");
    const json& payload = field(doc, "payload");
    const json& fp = field(doc, "fingerprint");
    const json& stored_hash = field(fp, "payload_hash");
    const json& graph_hash = field(fp, "graph_hash");
    if (!stored_hash.is_string() || !graph_hash.is_string()) format_error("fingerprint hashes must be strings");
    if (stored_hash.get<std::string>() != hex64(payload_hash(version, kind_j.get<std::string>(), params, payload))) {
      throw ContainerError(ContainerError::Reason::kFingerprint, "fingerprint mismatch: payload hash differs");
    }
    c.params = params_from_json(c.kind, params);
    c.fingerprint.n = number_field<Vertex>(fp, "n");
    c.fingerprint.m = number_field<std::size_t>(fp, "m");
    c.fingerprint.graph_hash = std::stoull(graph_hash.get<std::string>(), nullptr, 16);
    if (graph && !(fingerprint_of(*graph) == c.fingerprint)) {
      throw ContainerError(ContainerError::Reason::kFingerprint,
                           "fingerprint mismatch: container was built from a different graph");
    }
    Vertex n = 0;
    switch (c.kind) {
      case OracleKind::kSssp3: {
        auto o = OracleCodec::decode_sssp3(payload);
        if (o.source() != c.params.source) format_error("params disagree with payload");
        n = o.num_vertices();
        c.oracle = std::move(o);
        break;
      }
      case OracleKind::kSsspEps: {
        auto o = OracleCodec::decode_sssp_eps(payload);
        if (o.source() != c.params.source || o.epsilon() != c.params.epsilon) {
          format_error("params disagree with payload");
        }
        n = o.num_vertices();
        c.oracle = std::move(o);
        break;
      }
      case OracleKind::kApasp: {
        auto o = OracleCodec::decode_apasp(payload);
        if (o.k() != c.params.k || o.epsilon() != c.params.epsilon || o.hierarchy().seed != c.params.seed) {
          format_error("params disagree with payload");
        }
        n = o.num_vertices();
        c.oracle = std::move(o);
        break;
      }
    }
    if (n != c.fingerprint.n) format_error("payload size disagrees with fingerprint");
    return c;
  } catch (const json::exception& e) {
    format_error(e.what());
  } catch (const std::invalid_argument& e) {
    format_error(e.what());
  } catch (const std::out_of_range& e) {
    format_error(e.what());
  }
}

void write_container_file(const std::string& path, const OracleContainer& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << save_container(c);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

OracleContainer read_container_file(const std::string& path, const Graph* graph) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContainerError(ContainerError::Reason::kFormat, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_container(buf.str(), graph);
}

ReplacementAnswer query_container(const OracleContainer& c, Vertex u, Vertex v, Vertex x, bool want_path,
                                  std::int32_t* probes) {
  if (const auto* a = std::get_if<ApaspOracle>(&c.oracle)) {
    ApaspQueryInfo info;
    auto ans = a->query(u, v, x, want_path, &info);
    if (probes) *probes = info.probes;
    return ans;
  }
  if (probes) *probes = 1;
  if (const auto* s = std::get_if<Sssp3Oracle>(&c.oracle)) return s->query(v, x, want_path);
  return std::get<SsspEpsOracle>(c.oracle).query(v, x, want_path);
}

double stretch_bound(const OracleContainer& c) {
  switch (c.kind) {
    case OracleKind::kSssp3:
      return 3;
    case OracleKind::kSsspEps:
      return 1 + c.params.epsilon;
    case OracleKind::kApasp:
      return (2 * c.params.k - 1) * (1 + c.params.epsilon);
  }
  return 0;
}

std::size_t entry_count(const OracleContainer& c) {
  return std::visit([](const auto& o) -> std::size_t { return o.stats().entries; }, c.oracle);
}

}  // namespace dso
