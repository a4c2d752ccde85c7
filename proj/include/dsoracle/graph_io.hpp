#pragma once

#include <iosfwd>
#include <string>

#include "dsoracle/graph.hpp"

namespace dso {

enum class GraphFormat { kDimacs, kEdgeList };

GraphFormat parse_graph_format(const std::string& name);

/// DIMACS shortest-path format: "p sp n m" header, "a u v w" arc lines with
/// 1-based ids, "c" comments. Each undirected edge may appear once or in both
/// directions with equal weight.
Graph read_dimacs(std::istream& in);

/// One "u v [w]" edge per line with 0-based ids; '#' starts a comment. The
/// vertex count is one more than the largest id.
Graph read_edgelist(std::istream& in);

void write_dimacs(std::ostream& out, const Graph& g);
void write_edgelist(std::ostream& out, const Graph& g);

Graph read_graph(std::istream& in, GraphFormat format);
Graph load_graph(const std::string& path, GraphFormat format);
void save_graph(const std::string& path, const Graph& g, GraphFormat format);

}  // namespace dso
