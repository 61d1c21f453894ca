// Command-line front end: graph ingestion, certificate emission and
// verification, and the tau/nu ratio experiment.
//
// Exit codes: 0 success/verified, 1 verified negative, 2 input error,
// 3 budget or cap exceeded.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "minorpack/duality.hpp"
#include "minorpack/enumerate.hpp"
#include "minorpack/errors.hpp"
#include "minorpack/folio.hpp"
#include "minorpack/io.hpp"

using namespace minorpack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Common {
    std::string graph_path;
    std::vector<std::string> family;
    std::string json_out;
    int cap = 12;
    int pw_cap = kDefaultPathwidthCap;
};

void write_json(const std::string& path, const json& doc) {
    if (path.empty()) return;
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
}

void print_bags(const PathDecomposition& pd) {
    for (const auto& bag : pd.bags) {
        std::cout << "{";
        for (size_t i = 0; i < bag.size(); ++i) std::cout << (i ? "," : "") << bag[i];
        std::cout << "} ";
    }
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-minor packing/covering toolkit"};
    app.require_subcommand(1);

    Common c;
    int at_most = -1;
    std::string mode = "practical";
    std::string pattern_path, cert_path, csv_path;
    int fpt_t = 1, fpt_k = 0;
    int folio_q = 2, folio_p = -1;
    int exp_n = 6, exp_samples = 50;
    uint64_t exp_seed = 1;

    auto add_common = [&](CLI::App* sub, bool with_family) {
        sub->add_option("graph", c.graph_path, "graph file")->required();
        if (with_family)
            sub->add_option("--family", c.family, "family members, e.g. K2,P3 (comma separated)")
                ->required();
        sub->add_option("--json", c.json_out, "write a certificate document here");
        sub->add_option("--cap", c.cap, "exact-oracle size cap (loud override)");
        sub->add_option("--pw-cap", c.pw_cap, "pathwidth solver size cap");
    };

    auto* cmd_pw = app.add_subcommand("pathwidth", "exact pathwidth or a width test");
    add_common(cmd_pw, false);
    cmd_pw->add_option("--at-most", at_most, "test width <= T instead of solving exactly");

    auto* cmd_minor = app.add_subcommand("minor", "minor / rooted-minor model search");
    cmd_minor->add_option("--pattern", pattern_path, "pattern graph file")->required();
    cmd_minor->add_option("host", c.graph_path, "host graph file")->required();
    cmd_minor->add_option("--json", c.json_out, "write the model found");

    auto* cmd_nu = app.add_subcommand("nu", "exact maximum packing");
    add_common(cmd_nu, true);
    auto* cmd_tau = app.add_subcommand("tau", "exact minimum transversal");
    add_common(cmd_tau, true);

    auto* cmd_dual = app.add_subcommand("duality", "packing + transversal certificate");
    add_common(cmd_dual, true);
    cmd_dual->add_option("--mode", mode, "faithful | practical")
        ->check(CLI::IsMember({"faithful", "practical"}));

    auto* cmd_fpt = app.add_subcommand("fpt", "bounded-size deletion to pathwidth < t");
    add_common(cmd_fpt, false);
    cmd_fpt->add_option("-t,--target", fpt_t, "pathwidth threshold")->required();
    cmd_fpt->add_option("-k,--budget", fpt_k, "deletion budget")->required();
    cmd_fpt->add_option("--mode", mode, "faithful | practical")
        ->check(CLI::IsMember({"faithful", "practical"}));

    auto* cmd_folio = app.add_subcommand("folio", "q-folio / deletion-folio dump");
    add_common(cmd_folio, false);
    cmd_folio->add_option("--q", folio_q, "pattern size bound");
    cmd_folio->add_option("--deletion", folio_p, "deletion budget p (enables deletion folio)");

    auto* cmd_verify = app.add_subcommand("verify", "re-check a certificate document");
    cmd_verify->add_option("certificate", cert_path, "certificate JSON file")->required();
    cmd_verify->add_option("--graph", c.graph_path, "graph file the certificate binds to")
        ->required();

    auto* cmd_ratio = app.add_subcommand("ratio", "seeded tau/nu ratio experiment");
    cmd_ratio->add_option("--family", c.family, "family members")->required();
    cmd_ratio->add_option("--n", exp_n, "vertex count per sample");
    cmd_ratio->add_option("--samples", exp_samples, "number of random samples");
    cmd_ratio->add_option("--seed", exp_seed, "master seed (all randomness flows from it)");
    cmd_ratio->add_option("--csv", csv_path, "write the CSV table here");
    cmd_ratio->add_option("--cap", c.cap, "exact-oracle size cap (loud override)");

    CLI11_PARSE(app, argc, argv);

    try {
        OracleOptions oracle;
        oracle.cap = c.cap;
        if (c.cap != 12)
            std::cerr << "warning: oracle cap overridden to " << c.cap << "\n";

        if (cmd_pw->parsed()) {
            auto data = load_graph_file(c.graph_path);
            if (at_most >= 0) {
                auto dec = pathwidth_at_most(data.graph, at_most, c.pw_cap);
                if (!dec.at_most) {
                    std::cout << "no\n";
                    return kExitNo;
                }
                std::cout << "yes\n";
                print_bags(dec.witness);
                return kExitOk;
            }
            auto res = exact_pathwidth(data.graph, c.pw_cap);
            std::cout << "pathwidth " << res.width << "\n";
            print_bags(res.witness);
            return kExitOk;
        }

        if (cmd_minor->parsed()) {
            auto host = load_graph_file(c.graph_path);
            auto pattern = load_graph_file(pattern_path);
            if (pattern.roots.empty() != host.roots.empty())
                throw std::invalid_argument(
                    "rooted search needs a roots line in both files (or neither)");
            std::optional<MinorModel> model;
            if (!pattern.roots.empty()) {
                model = find_rooted_model({pattern.graph, pattern.roots},
                                          {host.graph, host.roots}, {});
            } else {
                model = find_model(pattern.graph, host.graph, {});
            }
            if (!model) {
                std::cout << "no model\n";
                return kExitNo;
            }
            std::cout << "model found\n";
            json sets = json::array();
            for (const auto& s : model->branch_sets) sets.push_back(s);
            std::cout << sets.dump() << "\n";
            if (!c.json_out.empty())
                write_json(c.json_out, json{{"kind", "model"},
                                            {"digest", graph_digest(host.graph)},
                                            {"branch_sets", sets}});
            return kExitOk;
        }

        if (cmd_nu->parsed() || cmd_tau->parsed()) {
            auto data = load_graph_file(c.graph_path);
            Family fam = parse_family(c.family);
            if (cmd_nu->parsed()) {
                auto [value, packing] = nu_exact(fam, data.graph, oracle);
                std::cout << "nu " << value << "\n";
                write_json(c.json_out, packing_certificate(fam, data.graph, packing));
            } else {
                auto [value, tv] = tau_exact(fam, data.graph, oracle);
                std::cout << "tau " << value << "\n";
                write_json(c.json_out, transversal_certificate(fam, data.graph, tv));
            }
            return kExitOk;
        }

        if (cmd_dual->parsed()) {
            auto data = load_graph_file(c.graph_path);
            Family fam = parse_family(c.family);
            DualityOptions opts;
            opts.oracle = oracle;
            auto cert = ep_duality(fam, data.graph,
                                   mode == "faithful" ? DualityMode::Faithful
                                                      : DualityMode::Practical,
                                   opts);
            if (!verify_certificate(fam, data.graph, cert)) {
                std::cerr << "internal error: certificate failed self-verification\n";
                return kExitNo;
            }
            std::cout << "packing " << cert.packing.size() << " transversal "
                      << cert.transversal.size() << " ratio " << cert.ratio << "\n";
            if (cert.downgraded) std::cout << "note: faithful run downgraded to practical\n";
            write_json(c.json_out, duality_certificate_json(fam, data.graph, cert));
            return kExitOk;
        }

        if (cmd_fpt->parsed()) {
            auto data = load_graph_file(c.graph_path);
            FptOptions opts;
            opts.mode = mode == "faithful" ? DualityMode::Faithful : DualityMode::Practical;
            opts.pathwidth_cap = c.pw_cap;
            auto res = fpt_pw_deletion(data.graph, fpt_t, fpt_k, opts);
            if (!res) {
                std::cout << "no\n";
                return kExitNo;
            }
            std::cout << "yes";
            for (int v : res->vertices) std::cout << " " << v;
            std::cout << "\n";
            write_json(c.json_out, fpt_certificate(data.graph, fpt_t, fpt_k, *res));
            return kExitOk;
        }

        if (cmd_folio->parsed()) {
            auto data = load_graph_file(c.graph_path);
            RootedGraph rg{data.graph, data.roots};
            json out;
            if (folio_p >= 0) {
                auto df = deletion_folio(rg, folio_p, folio_q);
                out = json{{"kind", "deletion_folio"},
                           {"digest", graph_digest(data.graph)},
                           {"p", df.p},
                           {"q", df.q},
                           {"folio", df.digest()}};
            } else {
                auto folio = q_folio(rg, folio_q);
                json entries;
                for (const auto& [mask, set] : folio.entries) {
                    json list = json::array();
                    for (const auto& enc : set) list.push_back(CanonicalRootedGraph{enc}.hex());
                    entries[std::to_string(mask)] = list;
                }
                out = json{{"kind", "folio"},
                           {"digest", graph_digest(data.graph)},
                           {"q", folio.q},
                           {"entries", entries}};
            }
            std::cout << out.dump(2) << "\n";
            write_json(c.json_out, out);
            return kExitOk;
        }

        if (cmd_verify->parsed()) {
            auto data = load_graph_file(c.graph_path);
            std::ifstream in(cert_path);
            if (!in) {
                std::cerr << "cannot open certificate: " << cert_path << "\n";
                return kExitInput;
            }
            json doc = json::parse(in);
            if (verify_certificate_document(doc, data.graph)) {
                std::cout << "verified\n";
                return kExitOk;
            }
            std::cout << "REJECTED\n";
            return kExitNo;
        }

        if (cmd_ratio->parsed()) {
            Family fam = parse_family(c.family);
            auto res = run_ratio_experiment(fam, exp_n, exp_samples, exp_seed, oracle);
            std::cout << res.csv;
            std::cout << "# max ratio " << res.max_ratio << " at " << res.max_label << "\n";
            if (!csv_path.empty()) {
                std::ofstream out(csv_path);
                out << res.csv;
            }
            return kExitOk;
        }
    } catch (const GraphParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CapExceededError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kExitBudget;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad certificate document: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
