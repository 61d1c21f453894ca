#include <sstream>

#include "doctest.h"
#include "minorpack/duality.hpp"
#include "minorpack/io.hpp"
#include "testutil.hpp"

using namespace minorpack;
using testutil::clique;
using testutil::cycle;
using testutil::path;

namespace {

GraphFileData parse(const std::string& text) {
    std::istringstream in(text);
    return parse_graph_file(in);
}

}  // namespace

TEST_CASE("graph file parsing") {
    auto data = parse("# comment\n4 3\n0 1\n1 2\n2 3\n");
    CHECK(data.graph == path(4));
    CHECK(data.roots.empty());

    auto rooted = parse("3 2\n0 1\n1 2\nr 2 0\n");
    CHECK(rooted.roots == std::vector<int>{2, 0});

    // trailing newline optional, CRLF tolerated
    CHECK(parse("2 1\n0 1").graph == clique(2));
    CHECK(parse("2 1\r\n0 1\r\n").graph == clique(2));
}

TEST_CASE("graph file diagnostics are distinct") {
    CHECK_THROWS_WITH_AS(parse("3 2\n0 1\n0 1\n"),
                         doctest::Contains("duplicate edge"), GraphParseError);
    CHECK_THROWS_WITH_AS(parse("3 1\n1 1\n"), doctest::Contains("self-loop"), GraphParseError);
    CHECK_THROWS_WITH_AS(parse("3 1\n0 7\n"), doctest::Contains("out of range"),
                         GraphParseError);
    CHECK_THROWS_WITH_AS(parse("3 1\n0 1\nr 9\n"), doctest::Contains("out of range"),
                         GraphParseError);
    CHECK_THROWS_WITH_AS(parse("3 1\n0 1\nr 0 0\n"), doctest::Contains("duplicate root"),
                         GraphParseError);
    CHECK_THROWS_WITH_AS(parse(""), doctest::Contains("missing header"), GraphParseError);
    CHECK_THROWS_WITH_AS(parse("3 2\n0 1\n"), doctest::Contains("expected 2 edges"),
                         GraphParseError);
    try {
        parse("4 2\n0 1\n0 0\n");
        FAIL("expected a parse error");
    } catch (const GraphParseError& e) {
        CHECK(e.line == 3);  // line numbers point at the offender
    }
}

TEST_CASE("graph file round trip") {
    std::ostringstream out;
    write_graph_file(out, cycle(5), {4, 0});
    auto back = parse(out.str());
    CHECK(back.graph == cycle(5));
    CHECK(back.roots == std::vector<int>{4, 0});
}

TEST_CASE("digest binds to the edge set, not the input order") {
    Graph a(4, {{0, 1}, {2, 3}});
    Graph b(4, {{2, 3}, {0, 1}});
    CHECK(graph_digest(a) == graph_digest(b));
    CHECK(graph_digest(a) != graph_digest(path(4)));
    CHECK(graph_digest(a).size() == 16);
}

TEST_CASE("named graphs") {
    CHECK(named_graph("K3") == clique(3));
    CHECK(named_graph("P4") == path(4));
    CHECK(named_graph("C5") == cycle(5));
    CHECK(named_graph("S3").vertex_count() == 4);
    CHECK(named_graph("2K2").vertex_count() == 4);
    CHECK(named_graph("2K2").edge_count() == 2);
    CHECK(named_graph("B2").vertex_count() == 7);
    CHECK_THROWS_AS(named_graph("X3"), std::invalid_argument);
    CHECK_THROWS_AS(named_graph("K"), std::invalid_argument);
}

TEST_CASE("certificate documents round trip and reject mutations") {
    Family fam = Family::make({clique(2)});
    Graph g = cycle(5);

    auto [nu, packing] = nu_exact(fam, g);
    json pdoc = packing_certificate(fam, g, packing);
    CHECK(verify_certificate_document(pdoc, g));
    json broken = pdoc;
    broken["models"][0]["branch_sets"][0][0] = 4;  // collide with another model
    CHECK_FALSE(verify_certificate_document(broken, g));

    auto [tau, tv] = tau_exact(fam, g);
    json tdoc = transversal_certificate(fam, g, tv);
    CHECK(verify_certificate_document(tdoc, g));
    json tbroken = tdoc;
    tbroken["transversal"] = json::array({0});
    CHECK_FALSE(verify_certificate_document(tbroken, g));

    auto cert = ep_duality(fam, g, DualityMode::Practical);
    json ddoc = duality_certificate_json(fam, g, cert);
    CHECK(verify_certificate_document(ddoc, g));
    // bind to the wrong graph
    CHECK_FALSE(verify_certificate_document(ddoc, cycle(6)));

    auto fpt = fpt_pw_deletion(g, 1, 3);
    REQUIRE(fpt);
    json fdoc = fpt_certificate(g, 1, 3, *fpt);
    CHECK(verify_certificate_document(fdoc, g));
    json fbroken = fdoc;
    fbroken["transversal"] = json::array();
    CHECK_FALSE(verify_certificate_document(fbroken, g));
}

TEST_CASE("certificate key order is stable") {
    Family fam = Family::make({clique(2)});
    Graph g = path(3);
    auto cert = ep_duality(fam, g, DualityMode::Practical);
    auto dump = duality_certificate_json(fam, g, cert).dump();
    CHECK(dump.find("\"kind\"") < dump.find("\"digest\""));
    CHECK(dump.find("\"digest\"") < dump.find("\"family\""));
    CHECK(dump.find("\"mode\"") < dump.find("\"ratio\""));
}

TEST_CASE("ratio experiment is reproducible and exact on complete graphs") {
    Family fam = Family::make({clique(2)});
    auto a = run_ratio_experiment(fam, 6, 10, 99);
    auto b = run_ratio_experiment(fam, 6, 10, 99);
    CHECK(a.csv == b.csv);  // byte-identical
    auto c = run_ratio_experiment(fam, 6, 10, 100);
    CHECK(a.csv != c.csv);

    // K_n row: tau = n-1, nu = floor(n/2)
    REQUIRE_FALSE(a.rows.empty());
    CHECK(a.rows[0].label == "K6");
    CHECK(a.rows[0].nu == 3);
    CHECK(a.rows[0].tau == 5);

    CHECK(a.csv.substr(0, a.csv.find('\n')) == "seed,graph,n,nu,tau,ratio");
}

TEST_CASE("rng is platform-stable") {
    Rng rng(12345);
    CHECK(rng.next() == Rng(12345).next());
    Rng r2(1);
    uint64_t first = r2.next();
    CHECK(first != 0);
}
