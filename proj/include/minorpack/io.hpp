#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "minorpack/duality.hpp"
#include "minorpack/erdos_posa.hpp"
#include "minorpack/graph.hpp"

#include "json.hpp"

namespace minorpack {

struct GraphParseError : std::runtime_error {
    int line;
    GraphParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct GraphFileData {
    Graph graph;
    std::vector<int> roots;  // empty when no roots line
};

// Format: optional '#' comment lines anywhere; a header "n m"; m edge lines
// "u v"; an optional roots line "r v1 v2 ...". Whitespace separated, LF line
// endings, trailing newline optional.
GraphFileData parse_graph_file(std::istream& in);
GraphFileData load_graph_file(const std::string& path);
void write_graph_file(std::ostream& out, const Graph& g, const std::vector<int>& roots = {});

// Order-independent 16-hex digest of (n, sorted edge list).
std::string graph_digest(const Graph& g);

// Small named graphs: K5, P4, C6, S3 (star K_{1,3}), B2 (complete binary
// tree); an optional leading multiplier takes disjoint copies, e.g. 2K2.
Graph named_graph(const std::string& name);
Family parse_family(const std::vector<std::string>& names);

using json = nlohmann::ordered_json;

json family_to_json(const Family& fam);
Family family_from_json(const json& j);

json packing_certificate(const Family& fam, const Graph& g, const Packing& p);
json transversal_certificate(const Family& fam, const Graph& g, const Transversal& x);
json duality_certificate_json(const Family& fam, const Graph& g, const DualityCertificate& c);
json fpt_certificate(const Graph& g, int t, int k, const Transversal& x);

// Re-checks a certificate document against the graph it claims to bind to.
// Returns false on any mismatch; throws GraphParseError-style
// std::invalid_argument only for structurally malformed documents.
bool verify_certificate_document(const json& doc, const Graph& g,
                                 const FindModelOptions& opts = {});

// Deterministic xorshift-based generator: identical streams on every
// platform, all randomness flows from the one seed.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}
    uint64_t next();
    uint32_t below(uint32_t n);       // uniform in [0, n)
    bool chance(uint32_t num, uint32_t den);
};

Graph random_graph(int n, uint32_t p_num, uint32_t p_den, Rng& rng);

struct ExperimentRow {
    uint64_t seed;
    std::string label;
    int n = 0;
    int nu = 0;
    int tau = 0;
    bool has_ratio = false;
    double ratio = 0.0;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    double max_ratio = 0.0;
    std::string max_label;
    std::string csv;  // header "seed,graph,n,nu,tau,ratio"
};

ExperimentResult run_ratio_experiment(const Family& fam, int n, int samples, uint64_t seed,
                                      const OracleOptions& opts = {});

}  // namespace minorpack
