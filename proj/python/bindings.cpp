#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "dsoracle/apasp.hpp"
#include "dsoracle/bench.hpp"
#include "dsoracle/container.hpp"
#include "dsoracle/exact.hpp"
#include "dsoracle/generate.hpp"
#include "dsoracle/graph.hpp"
#include "dsoracle/graph_io.hpp"
#include "dsoracle/sssp3.hpp"
#include "dsoracle/sssp_eps.hpp"

namespace py = pybind11;
using namespace dso;

namespace {

// None stands for "no failed vertex".
Vertex failed(std::optional<Vertex> x) { return x ? *x : kNoVertex; }

py::tuple answer(const ReplacementAnswer& a) {
  if (!a.path) return py::make_tuple(a.distance, py::none());
  return py::make_tuple(a.distance, a.path->vertices);
}

WeightRange weights(std::int64_t lo, std::int64_t hi) { return {lo, hi}; }

}  // namespace

PYBIND11_MODULE(_dsoracle, m) {
  m.doc() = "Approximate shortest paths avoiding a single failed vertex";
  m.attr("CONTAINER_VERSION") = kContainerVersion;
  py::register_exception<ContainerError>(m, "ContainerError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](Vertex n, const std::vector<std::tuple<Vertex, Vertex, Weight>>& edges) {
             std::vector<Edge> e;
             e.reserve(edges.size());
             for (const auto& [u, v, w] : edges) e.push_back({u, v, w});
             return Graph(n, std::move(e));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("unweighted", &Graph::unweighted)
      .def_property_readonly("content_hash", &Graph::content_hash)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::tuple<Vertex, Vertex, Weight>> out;
             for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
             return out;
           })
      .def("weight", &Graph::weight, py::arg("u"), py::arg("v"));

  m.def("load_graph", [](const std::string& path, const std::string& format) {
    return load_graph(path, parse_graph_format(format));
  }, py::arg("path"), py::arg("format") = "dimacs");
  m.def("save_graph", [](const std::string& path, const Graph& g, const std::string& format) {
    save_graph(path, g, parse_graph_format(format));
  }, py::arg("path"), py::arg("graph"), py::arg("format") = "dimacs");

  m.def("generate_gnp", [](Vertex n, double p, std::uint64_t seed, std::int64_t lo, std::int64_t hi) {
    return generate_gnp(n, p, seed, weights(lo, hi));
  }, py::arg("n"), py::arg("p"), py::arg("seed") = 42, py::arg("min_weight") = 1, py::arg("max_weight") = 1);
  m.def("generate_grid", [](Vertex rows, Vertex cols, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
    return generate_grid(rows, cols, weights(lo, hi), seed);
  }, py::arg("rows"), py::arg("cols"), py::arg("min_weight") = 1, py::arg("max_weight") = 1, py::arg("seed") = 0);
  m.def("generate_cycle", [](Vertex n) { return generate_cycle(n); }, py::arg("n"));
  m.def("generate_path", [](Vertex n) { return generate_path(n); }, py::arg("n"));
  m.def("generate_star", [](Vertex n) { return generate_star(n); }, py::arg("n"));

  m.def("exact_replacement", [](const Graph& g, Vertex u, Vertex v, std::optional<Vertex> x) {
    return answer(exact_replacement(g, u, v, failed(x)));
  }, py::arg("graph"), py::arg("u"), py::arg("v"), py::arg("x") = py::none(),
        "Exact shortest u-v path avoiding x, as (distance, path or None).");

  py::class_<Sssp3Oracle>(m, "Sssp3Oracle")
      .def_static("build", &Sssp3Oracle::build, py::arg("graph"), py::arg("source"),
                  py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("source", &Sssp3Oracle::source)
      .def_property_readonly("entries", [](const Sssp3Oracle& o) { return o.stats().entries; })
      .def("query", [](const Sssp3Oracle& o, Vertex v, std::optional<Vertex> x) {
        return answer(o.query(v, failed(x)));
      }, py::arg("v"), py::arg("x") = py::none());

  py::class_<SsspEpsOracle>(m, "SsspEpsOracle")
      .def_static("build", &SsspEpsOracle::build, py::arg("graph"), py::arg("source"), py::arg("epsilon"),
                  py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("source", &SsspEpsOracle::source)
      .def_property_readonly("epsilon", &SsspEpsOracle::epsilon)
      .def_property_readonly("entries", [](const SsspEpsOracle& o) { return o.stats().entries; })
      .def_property_readonly("special_count", [](const SsspEpsOracle& o) { return o.stats().special; })
      .def("query", [](const SsspEpsOracle& o, Vertex v, std::optional<Vertex> x) {
        return answer(o.query(v, failed(x)));
      }, py::arg("v"), py::arg("x") = py::none());

  py::class_<ApaspOracle>(m, "ApaspOracle")
      .def_static("build", &ApaspOracle::build, py::arg("graph"), py::arg("k"), py::arg("epsilon"),
                  py::arg("seed") = 42, py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("k", &ApaspOracle::k)
      .def_property_readonly("epsilon", &ApaspOracle::epsilon)
      .def_property_readonly("entries", [](const ApaspOracle& o) { return o.stats().entries; })
      .def("query", [](const ApaspOracle& o, Vertex u, Vertex v, std::optional<Vertex> x) {
        return answer(o.query(u, v, failed(x)));
      }, py::arg("u"), py::arg("v"), py::arg("x") = py::none())
      .def("probes", [](const ApaspOracle& o, Vertex u, Vertex v, std::optional<Vertex> x) {
        ApaspQueryInfo info;
        o.query(u, v, failed(x), false, &info);
        return info.probes;
      }, py::arg("u"), py::arg("v"), py::arg("x") = py::none());

  py::class_<OracleContainer>(m, "Container")
      .def_property_readonly("kind", [](const OracleContainer& c) { return to_string(c.kind); })
      .def_property_readonly("entries", &entry_count)
      .def_property_readonly("stretch_bound", &stretch_bound)
      .def_property_readonly("params", [](const OracleContainer& c) {
        py::dict d;
        d["source"] = c.params.source;
        d["epsilon"] = c.params.epsilon;
        d["k"] = c.params.k;
        d["seed"] = c.params.seed;
        return d;
      })
      .def("query", [](const OracleContainer& c, Vertex u, Vertex v, std::optional<Vertex> x) {
        return answer(query_container(c, u, v, failed(x)));
      }, py::arg("u"), py::arg("v"), py::arg("x") = py::none(),
           "Single-source kinds ignore u and answer from the source.")
      .def("save", &save_container)
      .def("write", [](const OracleContainer& c, const std::string& path) { write_container_file(path, c); },
           py::arg("path"));

  m.def("build_container", [](const Graph& g, const std::string& kind, Vertex source, double epsilon, std::int32_t k,
                              std::uint64_t seed) {
    OracleParams p;
    const auto kd = parse_oracle_kind(kind);
    if (kd != OracleKind::kApasp) p.source = source;
    if (kd != OracleKind::kSssp3) p.epsilon = epsilon;
    if (kd == OracleKind::kApasp) {
      p.k = k;
      p.seed = seed;
    }
    py::gil_scoped_release release;
    return build_container(g, kd, p);
  }, py::arg("graph"), py::arg("kind"), py::arg("source") = 0, py::arg("epsilon") = 0.5, py::arg("k") = 2,
        py::arg("seed") = 42);
  m.def("load_container", [](const std::string& text, const Graph* g) { return load_container(text, g); },
        py::arg("text"), py::arg("graph") = nullptr);
  m.def("read_container", [](const std::string& path, const Graph* g) { return read_container_file(path, g); },
        py::arg("path"), py::arg("graph") = nullptr);

  m.def("verify", [](const Graph& g, const OracleContainer& c, std::uint64_t seed) {
    VerifyOptions o;
    o.seed = seed;
    VerifyReport r;
    {
      py::gil_scoped_release release;
      r = verify_container(g, c, o);
    }
    py::dict d;
    d["ok"] = r.ok();
    d["queries"] = r.queries;
    d["bound"] = r.bound;
    d["mean_stretch"] = r.mean_stretch;
    d["max_stretch"] = r.max_stretch;
    d["mean_probes"] = r.mean_probes;
    d["max_probes"] = r.max_probes;
    d["stretch_violations"] = r.stretch_violations;
    d["invalid_paths"] = r.invalid_paths;
    d["reachability_mismatches"] = r.reachability_mismatches;
    return d;
  }, py::arg("graph"), py::arg("container"), py::arg("seed") = 42);
}
