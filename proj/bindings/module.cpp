#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minorpack/duality.hpp"
#include "minorpack/enumerate.hpp"
#include "minorpack/erdos_posa.hpp"
#include "minorpack/errors.hpp"
#include "minorpack/folio.hpp"
#include "minorpack/io.hpp"

namespace py = pybind11;
using namespace minorpack;

namespace {

Family family_from_members(const std::vector<Graph>& members) {
    return Family::make(members);
}

py::dict certificate_dict(const DualityCertificate& c) {
    py::dict d;
    py::list models;
    for (const auto& [member, model] : c.packing.models) {
        py::dict m;
        m["member"] = member;
        m["branch_sets"] = model.branch_sets;
        models.append(m);
    }
    d["packing"] = models;
    d["transversal"] = c.transversal.vertices;
    d["ratio"] = c.ratio;
    d["constant_used"] = c.constant_used;
    d["mode"] = c.mode == DualityMode::Faithful ? "faithful" : "practical";
    d["downgraded"] = c.downgraded;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "graph-minor packing/covering toolkit";

    py::register_exception<CapExceededError>(m, "CapExceededError");
    py::register_exception<BudgetExceededError>(m, "BudgetExceededError");
    py::register_exception<minorpack::OverflowError>(m, "ConstantOverflowError");

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, const std::vector<std::pair<int, int>>&>(), py::arg("n"),
             py::arg("edges"))
        .def_property_readonly("n", &Graph::vertex_count)
        .def_property_readonly("m", &Graph::edge_count)
        .def("edges", &Graph::edges)
        .def("neighbors", &Graph::neighbors)
        .def("has_edge", &Graph::has_edge)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.vertex_count()) +
                   ", m=" + std::to_string(g.edge_count()) + ")";
        });

    m.def("named_graph", &named_graph, py::arg("name"));
    m.def("graph_digest", &graph_digest);
    m.def("connected_components", &connected_components);

    m.def(
        "exact_pathwidth",
        [](const Graph& g, int cap) {
            auto res = exact_pathwidth(g, cap);
            return py::make_tuple(res.width, res.witness.bags);
        },
        py::arg("g"), py::arg("cap") = kDefaultPathwidthCap);
    m.def(
        "pathwidth_at_most",
        [](const Graph& g, int t, int cap) -> py::object {
            auto res = pathwidth_at_most(g, t, cap);
            if (!res.at_most) return py::none();
            return py::cast(res.witness.bags);
        },
        py::arg("g"), py::arg("t"), py::arg("cap") = kDefaultPathwidthCap);

    m.def(
        "find_model",
        [](const Graph& pattern, const Graph& host) -> py::object {
            auto res = find_model(pattern, host);
            if (!res) return py::none();
            return py::cast(res->branch_sets);
        },
        py::arg("pattern"), py::arg("host"));
    m.def(
        "find_rooted_model",
        [](const Graph& pattern, const std::vector<int>& pattern_roots, const Graph& host,
           const std::vector<int>& host_roots) -> py::object {
            auto res = find_rooted_model({pattern, pattern_roots}, {host, host_roots});
            if (!res) return py::none();
            return py::cast(res->branch_sets);
        },
        py::arg("pattern"), py::arg("pattern_roots"), py::arg("host"), py::arg("host_roots"));

    m.def(
        "nu_exact",
        [](const std::vector<Graph>& members, const Graph& g, int cap) {
            OracleOptions opts;
            opts.cap = cap;
            auto [value, packing] = nu_exact(family_from_members(members), g, opts);
            py::list models;
            for (const auto& [member, model] : packing.models) {
                py::dict d;
                d["member"] = member;
                d["branch_sets"] = model.branch_sets;
                models.append(d);
            }
            return py::make_tuple(value, models);
        },
        py::arg("family"), py::arg("g"), py::arg("cap") = 12);
    m.def(
        "tau_exact",
        [](const std::vector<Graph>& members, const Graph& g, int cap) {
            OracleOptions opts;
            opts.cap = cap;
            auto [value, tv] = tau_exact(family_from_members(members), g, opts);
            return py::make_tuple(value, tv.vertices);
        },
        py::arg("family"), py::arg("g"), py::arg("cap") = 12);

    m.def(
        "klogk_transversal",
        [](const Graph& tree, const Graph& g) {
            return klogk_transversal(tree, g).vertices;
        },
        py::arg("tree"), py::arg("g"));
    m.def(
        "forest_transversal",
        [](const std::vector<Graph>& members, const Graph& g) {
            return forest_transversal(family_from_members(members), g).vertices;
        },
        py::arg("family"), py::arg("g"));

    m.def(
        "ep_duality",
        [](const std::vector<Graph>& members, const Graph& g, const std::string& mode) {
            Family fam = family_from_members(members);
            auto cert = ep_duality(
                fam, g, mode == "faithful" ? DualityMode::Faithful : DualityMode::Practical);
            if (!verify_certificate(fam, g, cert))
                throw std::runtime_error("certificate failed self-verification");
            return certificate_dict(cert);
        },
        py::arg("family"), py::arg("g"), py::arg("mode") = "practical");

    m.def(
        "fpt_pw_deletion",
        [](const Graph& g, int t, int k) -> py::object {
            auto res = fpt_pw_deletion(g, t, k);
            if (!res) return py::none();
            return py::cast(res->vertices);
        },
        py::arg("g"), py::arg("t"), py::arg("k"));

    m.def(
        "minimal_pw_subgraph",
        [](const Graph& g, int t) { return minimal_pw_subgraph(g, t); }, py::arg("g"),
        py::arg("t"));
}
