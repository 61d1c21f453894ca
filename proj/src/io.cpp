#include "minorpack/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minorpack {

GraphFileData parse_graph_file(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int n = 0, m = 0, edges_read = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> roots;
    bool have_roots = false;

    auto fail = [&](const std::string& msg) -> void { throw GraphParseError(lineno, msg); };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> n >> m)) fail("expected header \"n m\"");
            if (n < 0 || m < 0) fail("negative counts in header");
            std::string extra;
            if (ls >> extra) fail("trailing tokens after header");
            have_header = true;
            continue;
        }
        if (line[first] == 'r') {
            if (have_roots) fail("duplicate roots line");
            char tag;
            ls >> tag;
            int v;
            while (ls >> v) {
                if (v < 0 || v >= n) fail("root id " + std::to_string(v) + " out of range");
                if (std::find(roots.begin(), roots.end(), v) != roots.end())
                    fail("duplicate root " + std::to_string(v));
                roots.push_back(v);
            }
            if (!ls.eof()) fail("malformed roots line");
            have_roots = true;
            continue;
        }
        int u, v;
        if (!(ls >> u >> v)) fail("expected edge \"u v\"");
        std::string extra;
        if (ls >> extra) fail("trailing tokens after edge");
        if (edges_read >= m) fail("more edges than the header announced");
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail("vertex id out of range in edge " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) fail("self-loop at vertex " + std::to_string(u));
        auto e = std::minmax(u, v);
        for (auto [a, b] : edges)
            if (a == e.first && b == e.second)
                fail("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        edges.emplace_back(e.first, e.second);
        ++edges_read;
    }
    ++lineno;
    if (!have_header) throw GraphParseError(lineno, "missing header");
    if (edges_read != m)
        throw GraphParseError(lineno, "expected " + std::to_string(m) + " edges, found " +
                                          std::to_string(edges_read));
    return {Graph(n, edges), roots};
}

GraphFileData load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return parse_graph_file(in);
}

void write_graph_file(std::ostream& out, const Graph& g, const std::vector<int>& roots) {
    out << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    if (!roots.empty()) {
        out << "r";
        for (int v : roots) out << " " << v;
        out << "\n";
    }
}

std::string graph_digest(const Graph& g) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<uint64_t>(g.vertex_count()));
    for (auto [u, v] : g.edges()) {
        mix(static_cast<uint64_t>(u));
        mix(static_cast<uint64_t>(v));
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Graph named_graph(const std::string& name) {
    size_t i = 0;
    int copies = 0;
    while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) {
        copies = copies * 10 + (name[i] - '0');
        ++i;
    }
    if (copies == 0) copies = 1;
    if (i >= name.size()) throw std::invalid_argument("named_graph: bad name '" + name + "'");
    char kind = name[i++];
    int size = 0;
    if (i >= name.size()) throw std::invalid_argument("named_graph: missing size in '" + name + "'");
    while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) {
        size = size * 10 + (name[i] - '0');
        ++i;
    }
    if (i != name.size()) throw std::invalid_argument("named_graph: bad name '" + name + "'");

    auto base = [&]() -> Graph {
        std::vector<std::pair<int, int>> edges;
        switch (kind) {
            case 'K':
                for (int a = 0; a < size; ++a)
                    for (int b = a + 1; b < size; ++b) edges.emplace_back(a, b);
                return Graph(size, edges);
            case 'P':
                for (int a = 0; a + 1 < size; ++a) edges.emplace_back(a, a + 1);
                return Graph(size, edges);
            case 'C':
                if (size < 3) throw std::invalid_argument("named_graph: cycle needs >= 3");
                for (int a = 0; a < size; ++a) edges.emplace_back(a, (a + 1) % size);
                return Graph(size, edges);
            case 'S':
                for (int a = 1; a <= size; ++a) edges.emplace_back(0, a);
                return Graph(size + 1, edges);
            case 'B':
                return complete_binary_tree(size).graph;
            default:
                throw std::invalid_argument("named_graph: unknown kind '" +
                                            std::string(1, kind) + "'");
        }
    }();
    if (size == 0 && kind != 'S') throw std::invalid_argument("named_graph: zero size");
    std::vector<Graph> parts(copies, base);
    return disjoint_union(parts);
}

Family parse_family(const std::vector<std::string>& names) {
    std::vector<Graph> members;
    for (const auto& raw : names) {
        std::stringstream ss(raw);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) members.push_back(named_graph(item));
        }
    }
    return Family::make(std::move(members));
}

json family_to_json(const Family& fam) {
    json members = json::array();
    for (const auto& g : fam.members) {
        json edges = json::array();
        for (auto [u, v] : g.edges()) edges.push_back({u, v});
        members.push_back({{"n", g.vertex_count()}, {"edges", edges}});
    }
    return members;
}

Family family_from_json(const json& j) {
    std::vector<Graph> members;
    for (const auto& m : j) {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : m.at("edges")) edges.emplace_back(e.at(0), e.at(1));
        members.emplace_back(m.at("n").get<int>(), edges);
    }
    return Family::make(std::move(members));
}

namespace {

json packing_to_json(const Packing& p) {
    json models = json::array();
    for (const auto& [member, model] : p.models) {
        json sets = json::array();
        for (const auto& s : model.branch_sets) sets.push_back(s);
        models.push_back({{"member", member}, {"branch_sets", sets}});
    }
    return models;
}

Packing packing_from_json(const json& j) {
    Packing p;
    for (const auto& m : j) {
        MinorModel model;
        for (const auto& s : m.at("branch_sets")) model.branch_sets.push_back(s.get<std::vector<int>>());
        p.models.emplace_back(m.at("member").get<int>(), std::move(model));
    }
    return p;
}

}  // namespace

json packing_certificate(const Family& fam, const Graph& g, const Packing& p) {
    return json{{"kind", "packing"},
                {"digest", graph_digest(g)},
                {"family", family_to_json(fam)},
                {"models", packing_to_json(p)}};
}

json transversal_certificate(const Family& fam, const Graph& g, const Transversal& x) {
    return json{{"kind", "transversal"},
                {"digest", graph_digest(g)},
                {"family", family_to_json(fam)},
                {"transversal", x.vertices}};
}

json duality_certificate_json(const Family& fam, const Graph& g, const DualityCertificate& c) {
    return json{{"kind", "duality"},
                {"digest", graph_digest(g)},
                {"family", family_to_json(fam)},
                {"mode", c.mode == DualityMode::Faithful ? "faithful" : "practical"},
                {"downgraded", c.downgraded},
                {"constant_used", c.constant_used},
                {"ratio", c.ratio},
                {"models", packing_to_json(c.packing)},
                {"transversal", c.transversal.vertices}};
}

json fpt_certificate(const Graph& g, int t, int k, const Transversal& x) {
    return json{{"kind", "fpt"},
                {"digest", graph_digest(g)},
                {"t", t},
                {"k", k},
                {"transversal", x.vertices}};
}

bool verify_certificate_document(const json& doc, const Graph& g, const FindModelOptions& opts) {
    std::string kind = doc.at("kind").get<std::string>();
    if (doc.at("digest").get<std::string>() != graph_digest(g)) return false;
    if (kind == "packing") {
        Family fam = family_from_json(doc.at("family"));
        return verify_packing(fam, g, packing_from_json(doc.at("models")));
    }
    if (kind == "transversal") {
        Family fam = family_from_json(doc.at("family"));
        Transversal x{doc.at("transversal").get<std::vector<int>>()};
        x.vertices = vset_normalize(x.vertices);
        return verify_transversal(fam, g, x, opts);
    }
    if (kind == "duality") {
        Family fam = family_from_json(doc.at("family"));
        DualityCertificate cert;
        cert.packing = packing_from_json(doc.at("models"));
        cert.transversal.vertices = vset_normalize(doc.at("transversal").get<std::vector<int>>());
        cert.ratio = doc.at("ratio").get<double>();
        cert.constant_used = doc.at("constant_used").get<std::string>();
        cert.mode = doc.at("mode").get<std::string>() == "faithful" ? DualityMode::Faithful
                                                                    : DualityMode::Practical;
        return verify_certificate(fam, g, cert, opts);
    }
    if (kind == "fpt") {
        int t = doc.at("t").get<int>();
        int k = doc.at("k").get<int>();
        Transversal x{vset_normalize(doc.at("transversal").get<std::vector<int>>())};
        for (int v : x.vertices)
            if (v < 0 || v >= g.vertex_count()) return false;
        if (x.size() > k) return false;
        Graph rest = delete_vertices(g, x.vertices);
        return pathwidth_at_most(rest, t - 1, std::max(kDefaultPathwidthCap, g.vertex_count()))
            .at_most;
    }
    throw std::invalid_argument("verify_certificate_document: unknown kind '" + kind + "'");
}

uint64_t Rng::next() {
    // splitmix64; fixed bit-for-bit across platforms
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint32_t Rng::below(uint32_t n) {
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return static_cast<uint32_t>(x % n);
}

bool Rng::chance(uint32_t num, uint32_t den) {
    return below(den) < num;
}

Graph random_graph(int n, uint32_t p_num, uint32_t p_den, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p_num, p_den)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

ExperimentResult run_ratio_experiment(const Family& fam, int n, int samples, uint64_t seed,
                                      const OracleOptions& opts) {
    ExperimentResult result;
    std::ostringstream csv;
    csv << "seed,graph,n,nu,tau,ratio\n";

    auto add_row = [&](uint64_t row_seed, const std::string& label, const Graph& g) {
        ExperimentRow row;
        row.seed = row_seed;
        row.label = label;
        row.n = g.vertex_count();
        row.nu = nu_exact(fam, g, opts).first;
        row.tau = tau_exact(fam, g, opts).first;
        row.has_ratio = row.nu > 0;
        if (row.has_ratio) {
            row.ratio = static_cast<double>(row.tau) / static_cast<double>(row.nu);
            if (row.ratio > result.max_ratio) {
                result.max_ratio = row.ratio;
                result.max_label = label;
            }
        }
        csv << row.seed << "," << row.label << "," << row.n << "," << row.nu << "," << row.tau
            << ",";
        if (row.has_ratio) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", row.ratio);
            csv << buf;
        }
        csv << "\n";
        result.rows.push_back(std::move(row));
    };

    // designated complete-graph row first
    {
        std::vector<std::pair<int, int>> edges;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
        add_row(seed, "K" + std::to_string(n), Graph(n, edges));
    }
    for (int i = 0; i < samples; ++i) {
        uint64_t row_seed = seed + 1 + static_cast<uint64_t>(i);
        Rng rng(row_seed);
        uint32_t p_num = 1 + rng.below(9);  // density 10%..90%
        Graph g = random_graph(n, p_num, 10, rng);
        char label[16];
        std::snprintf(label, sizeof(label), "s%03d", i);
        add_row(row_seed, label, g);
    }
    result.csv = csv.str();
    return result;
}

}  // namespace minorpack
