// Command-line front end: gen, build, query, verify, bench.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dsoracle/bench.hpp"
#include "dsoracle/container.hpp"
#include "dsoracle/generate.hpp"
#include "dsoracle/graph_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph;
  std::string format = "dimacs";
  std::string oracle;
  dso::Vertex source = 0;
  double epsilon = 0.5;
  std::int32_t k = 2;
  std::uint64_t seed = 42;
  std::string out;
  std::string csv;

  // gen / bench
  std::string family = "gnp";
  dso::Vertex n = 0;
  double p = -1;
  dso::Vertex rows = 0;
  dso::Vertex cols = 0;
  std::int64_t min_weight = 1;
  std::int64_t max_weight = 1;
  std::vector<dso::Vertex> sizes;
  double degree = 10;
  bool no_verify = false;
  std::string histogram;

  // query / verify
  std::string container;
  std::vector<std::string> ids;
  bool no_path = false;
};

std::string format_distance(dso::Weight d) {
  if (d == dso::kInf) return "inf";
  std::ostringstream s;
  if (d == std::floor(d) && std::fabs(d) < 1e15) {
    s << static_cast<long long>(d);
  } else {
    s.precision(17);
    s << d;
  }
  return s.str();
}

dso::OracleParams params_from(const Options& o) {
  dso::OracleParams p;
  p.source = o.source;
  p.epsilon = o.epsilon;
  p.k = o.k;
  p.seed = o.seed;
  switch (dso::parse_oracle_kind(o.oracle)) {
    case dso::OracleKind::kSssp3:
      p.epsilon = 0;
      p.k = 0;
      p.seed = 0;
      break;
    case dso::OracleKind::kSsspEps:
      p.k = 0;
      p.seed = 0;
      break;
    case dso::OracleKind::kApasp:
      p.source = dso::kNoVertex;
      break;
  }
  return p;
}

dso::Graph load_input_graph(const Options& o) {
  if (o.graph.empty()) throw UsageError("--graph is required");
  return dso::load_graph(o.graph, dso::parse_graph_format(o.format));
}

dso::Graph generate(const std::string& family, dso::Vertex n, double p, dso::Vertex rows, dso::Vertex cols,
                    dso::WeightRange w, std::uint64_t seed) {
  if (family == "gnp") {
    if (n <= 0 || p < 0 || p > 1) throw UsageError("gnp needs --n > 0 and --p in [0, 1]");
    return dso::generate_gnp(n, p, seed, w);
  }
  if (family == "grid") {
    if (rows <= 0 || cols <= 0) throw UsageError("grid needs --rows and --cols");
    return dso::generate_grid(rows, cols, w, seed);
  }
  if (n <= 0) throw UsageError(family + " needs --n > 0");
  if (family == "cycle") return dso::generate_cycle(n, w, seed);
  if (family == "path") return dso::generate_path(n, w, seed);
  if (family == "star") return dso::generate_star(n, w, seed);
  throw UsageError("unknown graph family '" + family + "'");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write '" + path + "'");
}

int cmd_gen(const Options& o) {
  const auto g = generate(o.family, o.n, o.p, o.rows, o.cols, {o.min_weight, o.max_weight}, o.seed);
  std::ostringstream s;
  if (dso::parse_graph_format(o.format) == dso::GraphFormat::kDimacs) {
    dso::write_dimacs(s, g);
  } else {
    dso::write_edgelist(s, g);
  }
  write_text(o.out, s.str());
  return kExitOk;
}

int cmd_build(const Options& o) {
  if (o.out.empty()) throw UsageError("--out is required");
  const auto g = load_input_graph(o);
  const auto kind = dso::parse_oracle_kind(o.oracle);
  const auto start = std::chrono::steady_clock::now();
  const auto c = dso::build_container(g, kind, params_from(o));
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  dso::write_container_file(o.out, c);
  std::cout << "kind=" << dso::to_string(kind) << " n=" << g.num_vertices() << " m=" << g.num_edges()
            << " entries=" << dso::entry_count(c) << " build_ms=" << ms << '\n';
  return kExitOk;
}

dso::Vertex parse_vertex(const std::string& s, bool allow_none) {
  if (allow_none && (s == "none" || s == "-")) return dso::kNoVertex;
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v < (allow_none ? -1 : 0) || v > INT32_MAX) throw UsageError("bad vertex id '" + s + "'");
  return static_cast<dso::Vertex>(v);
}

int cmd_query(const Options& o) {
  std::optional<dso::Graph> g;
  if (!o.graph.empty()) g = load_input_graph(o);
  const auto c = dso::read_container_file(o.container, g ? &*g : nullptr);
  dso::Vertex u = dso::kNoVertex;
  dso::Vertex v = dso::kNoVertex;
  dso::Vertex x = dso::kNoVertex;
  if (c.kind == dso::OracleKind::kApasp) {
    if (o.ids.size() != 3) throw UsageError("apasp query needs <u> <v> <x>");
    u = parse_vertex(o.ids[0], false);
    v = parse_vertex(o.ids[1], false);
    x = parse_vertex(o.ids[2], true);
  } else {
    if (o.ids.size() != 2) throw UsageError(dso::to_string(c.kind) + " query needs <v> <x>");
    v = parse_vertex(o.ids[0], false);
    x = parse_vertex(o.ids[1], true);
  }
  const auto a = dso::query_container(c, u, v, x, !o.no_path);
  std::cout << "dist=" << format_distance(a.distance);
  if (a.reachable() && a.path) {
    std::cout << " path=";
    for (std::size_t i = 0; i < a.path->vertices.size(); ++i) std::cout << (i ? "," : "") << a.path->vertices[i];
  }
  std::cout << '\n';
  return kExitOk;
}

void print_report(const dso::VerifyReport& r) {
  std::cout << "queries=" << r.queries << " stretch_samples=" << r.stretch_samples << " bound=" << r.bound
            << " mean_stretch=" << r.mean_stretch << " max_stretch=" << r.max_stretch
            << " mean_probes=" << r.mean_probes << " max_probes=" << r.max_probes << '\n'
            << "stretch_violations=" << r.stretch_violations << " invalid_paths=" << r.invalid_paths
            << " reachability_mismatches=" << r.reachability_mismatches << '\n'
            << (r.ok() ? "ok" : "FAIL") << '\n';
}

int cmd_verify(const Options& o) {
  const auto g = load_input_graph(o);
  const auto c = dso::read_container_file(o.container, &g);
  dso::VerifyOptions vo;
  vo.seed = o.seed;
  const auto r = dso::verify_container(g, c, vo);
  print_report(r);
  if (!o.csv.empty()) {
    std::ostringstream s;
    dso::write_histogram_csv(s, r);
    write_text(o.csv, s.str());
  }
  return r.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_bench(const Options& o) {
  const auto kind = dso::parse_oracle_kind(o.oracle);
  dso::VerifyOptions vo;
  vo.seed = o.seed;
  std::vector<dso::Graph> graphs;
  if (!o.graph.empty()) graphs.push_back(load_input_graph(o));
  for (dso::Vertex n : o.sizes) {
    const auto gseed = dso::sub_seed(o.seed, "bench-graph", static_cast<std::uint64_t>(n));
    const dso::WeightRange w{o.min_weight, o.max_weight};
    if (o.family == "gnp") {
      graphs.push_back(generate("gnp", n, std::min(1.0, o.degree / n), 0, 0, w, gseed));
    } else if (o.family == "grid") {
      const auto rows = std::max<dso::Vertex>(1, static_cast<dso::Vertex>(std::sqrt(static_cast<double>(n))));
      graphs.push_back(generate("grid", 0, 0, rows, std::max<dso::Vertex>(1, n / rows), w, gseed));
    } else {
      graphs.push_back(generate(o.family, n, 0, 0, 0, w, gseed));
    }
  }
  std::vector<dso::BenchRow> rows;
  dso::VerifyReport merged;
  bool ok = true;
  for (const auto& g : graphs) {
    dso::VerifyReport r;
    rows.push_back(dso::bench_case(g, kind, params_from(o), vo, !o.no_verify, &r));
    ok = ok && (o.no_verify || r.ok());
    if (merged.histogram.size() < r.histogram.size()) merged.histogram.resize(r.histogram.size(), 0);
    for (std::size_t i = 0; i < r.histogram.size(); ++i) merged.histogram[i] += r.histogram[i];
  }
  std::ostringstream s;
  dso::write_bench_csv(s, rows);
  write_text(o.csv, s.str());
  if (!o.histogram.empty()) {
    std::ostringstream h;
    dso::write_histogram_csv(h, merged);
    write_text(o.histogram, h.str());
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate distance sensitivity oracles"};
  app.require_subcommand(1);
  Options o;

  auto add_graph = [&o](CLI::App* c, bool required) {
    auto* opt = c->add_option("--graph", o.graph, "Input graph file");
    if (required) opt->required();
    c->add_option("--format", o.format, "Graph format")->check(CLI::IsMember({"dimacs", "edgelist"}));
  };
  auto add_oracle = [&o](CLI::App* c) {
    c->add_option("--oracle", o.oracle, "Oracle kind")->required()->check(CLI::IsMember({"sssp3", "sssp-eps", "apasp"}));
    c->add_option("--source", o.source, "Source vertex for single-source oracles");
    c->add_option("--epsilon", o.epsilon, "Approximation parameter");
    c->add_option("--k", o.k, "Hierarchy depth for apasp");
    c->add_option("--seed", o.seed, "Random seed");
  };

  auto* gen = app.add_subcommand("gen", "Generate a graph");
  gen->add_option("--family", o.family, "gnp, grid, cycle, path or star")
      ->check(CLI::IsMember({"gnp", "grid", "cycle", "path", "star"}));
  gen->add_option("--n", o.n, "Vertex count");
  gen->add_option("--p", o.p, "Edge probability for gnp");
  gen->add_option("--rows", o.rows, "Grid rows");
  gen->add_option("--cols", o.cols, "Grid columns");
  gen->add_option("--min-weight", o.min_weight, "Smallest integer edge weight");
  gen->add_option("--max-weight", o.max_weight, "Largest integer edge weight");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"dimacs", "edgelist"}));
  gen->add_option("--out", o.out, "Output file (default stdout)");

  auto* build = app.add_subcommand("build", "Build an oracle and write its container");
  add_graph(build, true);
  add_oracle(build);
  build->add_option("--out", o.out, "Container file")->required();

  auto* query = app.add_subcommand("query", "Query a container: <v> <x> or, for apasp, <u> <v> <x>");
  query->add_option("container", o.container, "Container file")->required();
  query->add_option("ids", o.ids, "Vertex ids; x may be 'none'")->required();
  add_graph(query, false);
  query->add_flag("--no-path", o.no_path, "Print the distance only");

  auto* verify = app.add_subcommand("verify", "Compare a container against exact replacement distances");
  verify->add_option("container", o.container, "Container file")->required();
  add_graph(verify, true);
  verify->add_option("--seed", o.seed, "Seed for sampled failures");
  verify->add_option("--csv", o.csv, "Stretch histogram CSV");

  auto* bench = app.add_subcommand("bench", "Build and measure oracles over a size suite");
  add_graph(bench, false);
  add_oracle(bench);
  bench->add_option("--family", o.family, "Generated family")
      ->check(CLI::IsMember({"gnp", "grid", "cycle", "path", "star"}));
  bench->add_option("--sizes", o.sizes, "Vertex counts of generated graphs")->delimiter(',');
  bench->add_option("--degree", o.degree, "Expected degree for gnp (p = degree / n)");
  bench->add_option("--min-weight", o.min_weight, "Smallest integer edge weight");
  bench->add_option("--max-weight", o.max_weight, "Largest integer edge weight");
  bench->add_flag("--no-verify", o.no_verify, "Skip the exact comparison");
  bench->add_option("--csv", o.csv, "Report CSV (default stdout)");
  bench->add_option("--histogram", o.histogram, "Stretch histogram CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*build) return cmd_build(o);
    if (*query) return cmd_query(o);
    if (*verify) return cmd_verify(o);
    if (*bench) return cmd_bench(o);
  } catch (const dso::ContainerError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
