#include "dsoracle/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dso {
namespace {

// Merges the two directions of an undirected edge; conflicting weights throw.
class EdgeCollector {
 public:
  void add(Vertex u, Vertex v, Weight w, std::size_t line) {
    if (u == v) throw std::invalid_argument("line " + std::to_string(line) + ": self-loop");
    auto key = std::minmax(u, v);
    auto [it, inserted] = edges_.emplace(std::pair{key.first, key.second}, w);
    if (!inserted && it->second != w) {
      throw std::invalid_argument("line " + std::to_string(line) +
                                  ": conflicting weights for an undirected edge");
    }
  }

  std::vector<Edge> take() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto& [key, w] : edges_) out.push_back({key.first, key.second, w});
    return out;
  }

 private:
  std::map<std::pair<Vertex, Vertex>, Weight> edges_;
};

std::string format_weight(Weight w) {
  std::ostringstream os;
  os.precision(17);
  os << w;
  return os.str();
}

}  // namespace

GraphFormat parse_graph_format(const std::string& name) {
  if (name == "dimacs" || name == "gr") return GraphFormat::kDimacs;
  if (name == "edgelist") return GraphFormat::kEdgeList;
  throw std::invalid_argument("unknown graph format '" + name + "' (expected dimacs|edgelist)");
}

Graph read_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1;
  EdgeCollector edges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      long long m = 0;
      if (!(ls >> kind >> n >> m) || kind != "sp" || n < 0) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": bad 'p sp n m' header");
      }
    } else if (tag == "a") {
      if (n < 0) throw std::invalid_argument("line " + std::to_string(lineno) + ": arc before header");
      long long u = 0, v = 0;
      Weight w = 0;
      if (!(ls >> u >> v >> w) || u < 1 || v < 1 || u > n || v > n) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": bad arc line");
      }
      edges.add(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w, lineno);
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown record '" + tag + "'");
    }
  }
  if (n < 0) throw std::invalid_argument("dimacs: missing 'p sp' header");
  return Graph(static_cast<Vertex>(n), edges.take());
}

Graph read_edgelist(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  Vertex max_id = -1;
  EdgeCollector edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long u = 0, v = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v) || u < 0 || v < 0) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'u v [w]'");
    }
    Weight w = 1;
    if (!(ls >> w)) {
      if (!ls.eof()) throw std::invalid_argument("line " + std::to_string(lineno) + ": bad weight");
      w = 1;
    }
    edges.add(static_cast<Vertex>(u), static_cast<Vertex>(v), w, lineno);
    max_id = std::max({max_id, static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(max_id + 1, edges.take());
}

void write_dimacs(std::ostream& out, const Graph& g) {
  out << "p sp " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) {
    out << "a " << e.u + 1 << ' ' << e.v + 1 << ' ' << format_weight(e.w) << '\n';
  }
}

void write_edgelist(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_weight(e.w) << '\n';
}

Graph read_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::kDimacs ? read_dimacs(in) : read_edgelist(in);
}

Graph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
  return read_graph(in, format);
}

void save_graph(const std::string& path, const Graph& g, GraphFormat format) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write graph file '" + path + "'");
  if (format == GraphFormat::kDimacs) {
    write_dimacs(out, g);
  } else {
    write_edgelist(out, g);
  }
}

}  // namespace dso
