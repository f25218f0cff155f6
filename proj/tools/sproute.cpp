// sproute: mine super-peer communities, compute routing strategies, and run
// comparative routing experiments.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "sproute/config.hpp"
#include "sproute/hypergraph.hpp"
#include "sproute/mining.hpp"
#include "sproute/network.hpp"
#include "sproute/sim.hpp"

namespace {

using namespace sproute;

void print_clusters(std::ostream& out, const std::vector<Cluster>& clusters) {
    char buf[32];
    for (const auto& c : clusters) {
        std::snprintf(buf, sizeof buf, "%.6f", c.interestingness);
        out << "{" << join(c.pattern, ",") << "} ; {" << join(c.support, ",") << "} ; " << buf
            << "\n";
    }
}

void print_strategies(std::ostream& out, const std::vector<Strategy>& strategies) {
    for (const auto& s : strategies) out << join(s.members, " ") << "\n";
}

std::string resolve_output(const std::string& configured) {
    const char* dir = std::getenv("SPROUTE_OUT");
    if (!dir || !*dir) return configured;
    std::string base = configured;
    std::size_t slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    std::string d(dir);
    if (!d.empty() && d.back() != '/') d += '/';
    return d + base;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"super-peer community mining and query-routing experiments"};
    app.require_subcommand(1);

    // mine
    auto* mine = app.add_subcommand("mine", "select expertise clusters from a dataset");
    std::string mine_path, mine_out;
    double mine_minfr = 0.2;
    int mine_m = 1;
    mine->add_option("dataset", mine_path, "transaction dataset file")->required();
    mine->add_option("--minfr", mine_minfr, "frequency threshold in (0,1]");
    mine->add_option("--m", mine_m, "minimal new transactions per selected cluster");
    mine->add_option("--out", mine_out, "also write the listing to this file");

    // transversals
    auto* trans = app.add_subcommand("transversals", "list minimal transversals (strategies)");
    std::string trans_path;
    double trans_minfr = 0.0;
    int trans_m = 1;
    trans->add_option("input", trans_path, "hypergraph file, or dataset file with --minfr")
        ->required();
    trans->add_option("--minfr", trans_minfr,
                      "treat the input as a dataset: mine clusters first");
    trans->add_option("--m", trans_m, "m-overlap for dataset mode");

    // oracle-transversals
    auto* oracle = app.add_subcommand("oracle-transversals",
                                      "brute-force minimal transversals (<= 20 vertices)");
    std::string oracle_path;
    oracle->add_option("hypergraph", oracle_path, "hypergraph file")->required();

    // simulate
    auto* sim = app.add_subcommand("simulate", "run the configured experiment grid");
    std::string sim_config;
    bool sim_serial = false;
    sim->add_option("config", sim_config, "experiment config file")->required();
    sim->add_flag("--serial", sim_serial, "disable the parallel seed fan-out");

    // dump-network
    auto* dump = app.add_subcommand("dump-network", "generate a network and print its dump");
    NetworkGenParams gen;
    std::uint64_t dump_seed = 1;
    dump->add_option("--peers", gen.n_peers, "number of peers");
    dump->add_option("--superpeers", gen.n_superpeers, "number of super-peers");
    dump->add_option("--ksps", gen.n_ksps, "number of knowledge super-peers");
    dump->add_option("--items-per-theme", gen.items_per_theme, "concepts per theme");
    dump->add_option("--seed", dump_seed, "generation seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // --help is a success path
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (mine->parsed()) {
        auto ds = TransactionDataset::parse_file(mine_path);
        auto clusters = select_clusters(ds, {mine_minfr, mine_m});
        print_clusters(std::cout, clusters);
        if (!mine_out.empty()) {
            std::ofstream f(resolve_output(mine_out));
            if (!f) throw ParseError("cannot write '" + mine_out + "'");
            print_clusters(f, clusters);
        }
    } else if (trans->parsed()) {
        Hypergraph h;
        if (trans->count("--minfr") > 0) {
            auto ds = TransactionDataset::parse_file(trans_path);
            auto clusters = select_clusters(ds, {trans_minfr, trans_m});
            std::vector<std::string> sps;
            for (const auto& t : ds.transactions()) sps.push_back(t.id);
            h = from_clusters(clusters, sorted_unique(std::move(sps)));
        } else {
            h = Hypergraph::parse_file(trans_path);
        }
        if (h.edge_count() == 0) throw ParseError("input has no hyperedges");
        print_strategies(std::cout, minimal_transversals(h));
    } else if (oracle->parsed()) {
        auto h = Hypergraph::parse_file(oracle_path);
        if (h.edge_count() == 0) throw ParseError("input has no hyperedges");
        print_strategies(std::cout, minimal_transversals_bruteforce(h));
    } else if (sim->parsed()) {
        auto cfg = parse_config_file(sim_config);
        std::string csv = run_experiment(cfg, sim_serial ? Exec::serial : Exec::parallel);
        std::string path = resolve_output(cfg.output);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ParseError("cannot write '" + path + "'");
        f << csv;
        std::cout << "wrote " << (cfg.seeds.size() * cfg.policies.size()) << " rows to " << path
                  << "\n";
    } else if (dump->parsed()) {
        std::cout << dump_network(build_network(gen, dump_seed));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const sproute::PrereqError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sproute::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sproute::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
