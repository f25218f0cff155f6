#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sproute/config.hpp"

using namespace sproute;

namespace {

struct CmdResult {
    int exit_code;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    std::string out_path = "/tmp/sproute_test_out.txt";
    std::string cmd = std::string(SPROUTE_BIN) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream f(out_path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/" + name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("mine lists the selected clusters in selection order") {
    auto r = run_cmd("mine " + data("d1.txt") + " --minfr 0.2 --m 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{W1,W2,W3} ; {SP1,SP2,SP3} ; 0.933333\n"
          "{W4,W5} ; {SP4,SP5,SP6} ; 0.772727\n"
          "{W1,W6,W7} ; {SP6,SP7} ; 0.700000\n"
          "{W9} ; {SP7,SP8} ; 0.666667\n");
}

TEST_CASE("mine at full support is empty: the eight transactions share nothing") {
    auto r = run_cmd("mine " + data("d1.txt") + " --minfr 1.0 --m 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
}

TEST_CASE("a malformed dataset line fails with its line number") {
    auto path = write_temp("bad_dataset.txt", "t1: a b\noops no colon\n");
    auto r = run_cmd("mine " + path + " --minfr 0.5 --m 1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("line 2") != std::string::npos);
}

TEST_CASE("transversals on a hypergraph file") {
    auto r = run_cmd("transversals " + data("fig2.txt"));
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "v1 v5\n"
          "v1 v6\n"
          "v2 v5\n"
          "v4 v5\n"
          "v2 v3 v6\n"
          "v3 v4 v6\n");

    SUBCASE("the brute-force oracle command agrees") {
        auto o = run_cmd("oracle-transversals " + data("fig2.txt"));
        CHECK(o.exit_code == 0);
        CHECK(o.out == r.out);
    }
}

TEST_CASE("transversals from a dataset runs the full mining pipeline") {
    auto r1 = run_cmd("transversals " + data("d1.txt") + " --minfr 0.2 --m 1");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out ==
          "SP1 SP4 SP7\n"
          "SP1 SP5 SP7\n"
          "SP1 SP6 SP7\n"
          "SP1 SP6 SP8\n"
          "SP2 SP4 SP7\n"
          "SP2 SP5 SP7\n"
          "SP2 SP6 SP7\n"
          "SP2 SP6 SP8\n"
          "SP3 SP4 SP7\n"
          "SP3 SP5 SP7\n"
          "SP3 SP6 SP7\n"
          "SP3 SP6 SP8\n");

    // The larger table yields a 6-cluster selection whose hypergraph has 16
    // strategies; cross-checked against the exhaustive oracle.
    auto r2 = run_cmd("transversals " + data("d2.txt") + " --minfr 0.2 --m 1");
    CHECK(r2.exit_code == 0);
    std::istringstream lines(r2.out);
    std::vector<std::vector<std::string>> edges;
    std::string line;
    int count = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++count;
    CHECK(count == 16);
}

TEST_CASE("single-edge input yields each vertex as a strategy") {
    auto path = write_temp("single_edge.txt", "a b\n");
    auto r = run_cmd("transversals " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "a\nb\n");
}

TEST_CASE("empty hypergraph input is an input error") {
    auto path = write_temp("no_edges.txt", "# nothing here\n");
    auto r = run_cmd("transversals " + path);
    CHECK(r.exit_code == 2);
    auto o = run_cmd("oracle-transversals " + path);
    CHECK(o.exit_code == 2);
}

TEST_CASE("missing file and bad flags exit 2") {
    CHECK(run_cmd("mine /tmp/definitely_missing.txt").exit_code == 2);
    CHECK(run_cmd("bogus-subcommand").exit_code == 2);
}

TEST_CASE("an oversized brute-force oracle is a prerequisite failure") {
    std::string edge;
    for (int i = 0; i < 21; ++i) edge += "v" + std::to_string(i) + " ";
    auto path = write_temp("too_big.txt", edge + "\n");
    auto r = run_cmd("oracle-transversals " + path);
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("oracle too large") != std::string::npos);
}

TEST_CASE("config parsing errors name the offending field") {
    auto bad_key = write_temp("bad_key.cfg", "n_peers = 50\nn_superperas = 5\n");
    auto r = run_cmd("simulate " + bad_key);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("n_superperas") != std::string::npos);

    auto bad_value = write_temp("bad_value.cfg", "minfr = 1.5\n");
    auto r2 = run_cmd("simulate " + bad_value);
    CHECK(r2.exit_code == 2);
    CHECK(r2.out.find("minfr") != std::string::npos);
}

TEST_CASE("simulate writes a parseable deterministic csv") {
    std::string cfg_text =
        "n_peers = 60\n"
        "n_superpeers = 6\n"
        "n_ksps = 1\n"
        "eps_acc = 0.45\n"
        "n_queries = 30\n"
        "seeds = 1,2\n"
        "policies = baseline,traversal\n"
        "output = /tmp/sproute_report_a.csv\n";
    auto cfg_path = write_temp("sim_ok.cfg", cfg_text);

    auto r = run_cmd("simulate " + cfg_path);
    CHECK(r.exit_code == 0);
    auto csv = read_file("/tmp/sproute_report_a.csv");
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == metrics_csv_header());
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);  // 2 policies x 2 seeds
    CHECK(csv.find("baseline,1,60,6,30,") != std::string::npos);

    SUBCASE("byte-identical on a second run") {
        auto cfg2 = write_temp("sim_ok2.cfg",
                               cfg_text.substr(0, cfg_text.find("output")) +
                                   "output = /tmp/sproute_report_b.csv\n");
        auto r2 = run_cmd("simulate " + cfg2);
        CHECK(r2.exit_code == 0);
        CHECK(read_file("/tmp/sproute_report_b.csv") == csv);
    }
    SUBCASE("serial seed fan-out produces the same csv") {
        auto cfg3 = write_temp("sim_ok3.cfg",
                               cfg_text.substr(0, cfg_text.find("output")) +
                                   "output = /tmp/sproute_report_c.csv\n");
        auto r3 = run_cmd("simulate " + cfg3 + " --serial");
        CHECK(r3.exit_code == 0);
        CHECK(read_file("/tmp/sproute_report_c.csv") == csv);
    }
    SUBCASE("the output directory override is honoured") {
        std::system("mkdir -p /tmp/sproute_outdir");
        std::string cmd = std::string("SPROUTE_OUT=/tmp/sproute_outdir ") + SPROUTE_BIN +
                          " simulate " + cfg_path + " > /dev/null 2>&1";
        CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
        CHECK(read_file("/tmp/sproute_outdir/sproute_report_a.csv") == csv);
    }
}

TEST_CASE("dump-network round trips deterministically") {
    auto a = run_cmd("dump-network --peers 15 --superpeers 3 --seed 4");
    auto b = run_cmd("dump-network --peers 15 --superpeers 3 --seed 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("PEERS\n") == 0);
}

TEST_CASE("the shipped example config parses") {
    std::ifstream in(data("example.cfg"));
    REQUIRE(in);
    auto cfg = parse_config(in);
    CHECK(cfg.net.n_peers == 300);
    CHECK(cfg.seeds.size() == 5);
    CHECK(cfg.policies.size() == 3);
}
