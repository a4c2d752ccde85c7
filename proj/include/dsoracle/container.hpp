#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "dsoracle/apasp.hpp"
#include "dsoracle/graph.hpp"
#include "dsoracle/sssp3.hpp"
#include "dsoracle/sssp_eps.hpp"

namespace dso {

inline constexpr std::int32_t kContainerVersion = 1;

enum class OracleKind { kSssp3, kSsspEps, kApasp };

std::string to_string(OracleKind kind);
/// Accepts "sssp3", "sssp-eps", "apasp"; throws std::invalid_argument otherwise.
OracleKind parse_oracle_kind(std::string_view name);

struct OracleParams {
  Vertex source = kNoVertex;  // single-source kinds
  double epsilon = 0;         // sssp-eps, apasp
  std::int32_t k = 0;         // apasp
  std::uint64_t seed = 0;     // apasp

  friend bool operator==(const OracleParams&, const OracleParams&) = default;
};

/// Identifies the graph an oracle was built from. The serialized form also
/// carries a payload hash over version, kind, params and payload bytes.
struct Fingerprint {
  Vertex n = 0;
  std::size_t m = 0;
  std::uint64_t graph_hash = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

using AnyOracle = std::variant<Sssp3Oracle, SsspEpsOracle, ApaspOracle>;

struct OracleContainer {
  OracleKind kind = OracleKind::kSssp3;
  OracleParams params;
  Fingerprint fingerprint;
  AnyOracle oracle;
};

/// Load failures. `kFormat`: not a container or unsupported version;
/// `kFingerprint`: payload or graph does not match the stored fingerprint.
class ContainerError : public std::runtime_error {
 public:
  enum class Reason { kFormat, kFingerprint };
  ContainerError(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

/// Builds the requested oracle and fills in params and fingerprint.
OracleContainer build_container(const Graph& g, OracleKind kind, const OracleParams& params);

/// Canonical JSON: sorted keys, infinite distances as null. Identical
/// containers give identical bytes.
std::string save_container(const OracleContainer& c);

/// Throws ContainerError. With `graph` given, its size and content hash must
/// match the fingerprint.
OracleContainer load_container(std::string_view text, const Graph* graph = nullptr);

void write_container_file(const std::string& path, const OracleContainer& c);
OracleContainer read_container_file(const std::string& path, const Graph* graph = nullptr);

/// Uniform query: single-source kinds ignore `u` and answer for source -> v.
ReplacementAnswer query_container(const OracleContainer& c, Vertex u, Vertex v, Vertex x, bool want_path = true,
                                  std::int32_t* probes = nullptr);

/// The oracle's advertised stretch bound.
double stretch_bound(const OracleContainer& c);

/// Storage entries as reported by the oracle's counters.
std::size_t entry_count(const OracleContainer& c);

}  // namespace dso
