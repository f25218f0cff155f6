#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "sproute/routing.hpp"
#include "sproute/sim.hpp"

using namespace sproute;

namespace {

void add_sp(Network& net, const std::string& id, std::vector<std::string> concepts) {
    auto& sp = net.superpeers[id];
    sp.theme.theme_id = "T" + id;
    sp.theme.concepts = sorted_unique(std::move(concepts));
}

void add_peer(Network& net, const std::string& pid, const std::string& sp_id,
              std::vector<std::string> items) {
    Expertise e{sorted_unique(std::move(items))};
    net.peers[pid] = {e, sp_id};
    net.superpeers.at(sp_id).rsc[pid] = e;
    net.superpeers.at(sp_id).members.push_back(pid);
    net.link(pid, sp_id);
}

void link_sps(Network& net, const std::string& a, const std::string& b, double rsi_ab,
              double rsi_ba) {
    net.link(a, b);
    net.superpeers.at(a).neighbors.push_back(b);
    net.superpeers.at(b).neighbors.push_back(a);
    net.superpeers.at(a).rsi[b] = rsi_ab;
    net.superpeers.at(b).rsi[a] = rsi_ba;
}

Query make_query(const std::string& id, std::vector<std::string> subject,
                 const std::string& origin, int ttl = 8) {
    return Query{id, sorted_unique(std::move(subject)), origin, ttl};
}

// Community pattern of the two-community walk-through: the origin's
// super-peer holds one relevant local peer, one neighbour community is
// reachable and relevant, one is below the mapping threshold.
Network fig3_network() {
    Network net;
    add_sp(net, "SPA", {"ca1"});
    add_sp(net, "SPP", {"cp1"});
    add_sp(net, "SPX", {"cx1"});
    add_peer(net, "P1", "SPA", {"alpha"});
    add_peer(net, "P2", "SPA", {"zzzz"});
    add_peer(net, "P5", "SPP", {"alpha"});
    add_peer(net, "P9", "SPX", {"alpha"});
    link_sps(net, "SPA", "SPP", 0.8, 0.8);
    link_sps(net, "SPA", "SPX", 0.1, 0.1);
    return net;
}

std::set<std::string> contacted_sps(const Network& net, const RoutingOutcome& out) {
    std::set<std::string> sps;
    for (const auto& m : out.messages)
        if ((m.kind == MsgKind::Query || m.kind == MsgKind::Forward) &&
            net.superpeers.count(m.to))
            sps.insert(m.to);
    return sps;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("baseline walk-through: local peer plus one relevant neighbour community") {
    auto net = fig3_network();
    auto out = route_baseline(net, make_query("Q1", {"alpha"}, "P2"), 0.5);

    CHECK(out.retrieved == std::vector<std::pair<std::string, std::string>>{{"P1", "SPA"},
                                                                            {"P5", "SPP"}});
    CHECK(format_trace(out) ==
          "1 P2 SPA QUERY Q1\n"
          "2 SPA P2 RESPONSE Q1\n"
          "2 SPA SPP FORWARD Q1\n"
          "3 SPP P2 RESPONSE Q1\n");
    CHECK(out.sim_time == 3);
}

TEST_CASE("baseline with an unmatchable subject sends the local query only") {
    auto net = fig3_network();
    auto out = route_baseline(net, make_query("Q1", {"nomatch"}, "P2"), 0.99);
    CHECK(out.retrieved.empty());
    CHECK(format_trace(out) == "1 P2 SPA QUERY Q1\n");
    CHECK(out.sim_time == 1);
}

TEST_CASE("baseline at eps 0 contacts every neighbour exactly once") {
    Network net;
    add_sp(net, "SPA", {"ca"});
    add_sp(net, "SPB", {"cb"});
    add_sp(net, "SPC", {"cc"});
    add_peer(net, "P1", "SPA", {"zzzz"});
    add_peer(net, "P2", "SPB", {"zzzz"});
    add_peer(net, "P3", "SPC", {"zzzz"});
    link_sps(net, "SPA", "SPB", 0.3, 0.3);
    link_sps(net, "SPA", "SPC", 0.3, 0.3);
    link_sps(net, "SPB", "SPC", 0.3, 0.3);

    auto out = route_baseline(net, make_query("Q1", {"qq"}, "P1"), 0.0);
    // hand-enumerated multiset: one query, two forwards, no responses
    CHECK(format_trace(out) ==
          "1 P1 SPA QUERY Q1\n"
          "2 SPA SPB FORWARD Q1\n"
          "2 SPA SPC FORWARD Q1\n");
    CHECK(out.retrieved.empty());
}

TEST_CASE("baseline rejects an unknown origin peer") {
    auto net = fig3_network();
    CHECK_THROWS_AS(route_baseline(net, make_query("Q1", {"alpha"}, "Pnone"), 0.5), ParseError);
}

namespace {

Network ksp_network(bool trained) {
    Network net;
    add_sp(net, "SP1", {"c1"});
    add_sp(net, "SP7", {"c7"});
    add_sp(net, "SP8", {"c8"});
    add_peer(net, "Pq", "SP1", {"W1"});
    add_peer(net, "p7", "SP7", {"W9"});
    add_peer(net, "p8", "SP8", {"W9"});
    link_sps(net, "SP1", "SP7", 0.1, 0.1);
    link_sps(net, "SP1", "SP8", 0.1, 0.1);
    auto& ksp = net.ksps["KSP1"];
    ksp.scope = {"SP1", "SP7", "SP8"};
    net.link("KSP1", "SP1");
    net.link("KSP1", "SP7");
    net.link("KSP1", "SP8");
    if (trained) {
        std::vector<QueryLogRecord> log = {
            {{"W9"}, {"SP7", "SP8"}},  {{"W1", "W9"}, {"SP7", "SP8"}}, {{"W1"}, {"SP1"}},
            {{"W1", "W5"}, {"SP1"}},   {{"W5"}, {}},
        };
        ksp.index = train(log, 12, 1);
    }
    return net;
}

}  // namespace

TEST_CASE("knowledge route contacts exactly the predicted super-peers") {
    auto net = ksp_network(true);
    auto out = route_ksp(net, make_query("Q1", {"W9"}, "Pq"), 0.5);
    CHECK_FALSE(out.fallback);
    CHECK(out.retrieved == std::vector<std::pair<std::string, std::string>>{{"p7", "SP7"},
                                                                            {"p8", "SP8"}});
    CHECK(format_trace(out) ==
          "1 Pq SP1 QUERY Q1\n"
          "2 SP1 KSP1 FORWARD Q1\n"
          "3 KSP1 SP7 FORWARD Q1\n"
          "3 KSP1 SP8 FORWARD Q1\n"
          "4 SP7 Pq RESPONSE Q1\n"
          "4 SP8 Pq RESPONSE Q1\n");
    CHECK(out.sim_time == 4);
    CHECK(contacted_sps(net, out) == std::set<std::string>{"SP1", "SP7", "SP8"});
}

TEST_CASE("an empty prediction keeps the query local") {
    auto net = ksp_network(true);
    auto out = route_ksp(net, make_query("Q1", {"W5"}, "Pq"), 0.5);
    CHECK(contacted_sps(net, out) == std::set<std::string>{"SP1"});
    CHECK(out.retrieved.empty());
    // local answer plus the knowledge hop
    CHECK(format_trace(out) ==
          "1 Pq SP1 QUERY Q1\n"
          "2 SP1 KSP1 FORWARD Q1\n");
}

TEST_CASE("a cold knowledge super-peer falls back to the baseline and is flagged") {
    auto net = ksp_network(false);
    auto q = make_query("Q1", {"W9"}, "Pq");
    auto out = route_ksp(net, q, 0.5);
    CHECK(out.fallback);
    auto base = route_baseline(net, q, 0.5);
    CHECK(format_trace(out) == format_trace(base));
}

TEST_CASE("knowledge route requires a covering scope") {
    auto net = ksp_network(true);
    net.ksps.clear();
    CHECK_THROWS_AS(route_ksp(net, make_query("Q1", {"W9"}, "Pq"), 0.5), PrereqError);
}

namespace {

std::vector<Strategy> d2_strategies() {
    auto h = Hypergraph::from_edges({{"SP5", "SP6", "SP10"},
                                     {"SP4", "SP6", "SP7"},
                                     {"SP2", "SP8", "SP9"},
                                     {"SP1", "SP2", "SP8"},
                                     {"SP1", "SP3", "SP5"}});
    return minimal_transversals(h);
}

}  // namespace

TEST_CASE("select_strategy prefers the smallest strategy containing the home super-peer") {
    auto strategies = d2_strategies();
    auto s = select_strategy(strategies, "SP1");
    CHECK(s.members == std::vector<std::string>{"SP1", "SP2", "SP6"});

    CHECK(select_strategy({Strategy{{"A"}}}, "A").members == std::vector<std::string>{"A"});
    CHECK(select_strategy({Strategy{{"B", "C"}}}, "A").members ==
          std::vector<std::string>{"B", "C"});
    CHECK_THROWS_WITH_AS(select_strategy({}, "A"), "no strategies computed", PrereqError);
}

TEST_CASE("1-Strategy walk-through: strategy fan-out plus one cluster relay") {
    Network net;
    // Only SP8's advertised theme covers the subject, so the query-filtered
    // relay reaches exactly SP8, through its cluster-mate SP2 on the route.
    add_sp(net, "SP1", {"cat01"});
    add_sp(net, "SP2", {"elk06"});
    add_sp(net, "SP3", {"dog02"});
    add_sp(net, "SP4", {"fox03"});
    add_sp(net, "SP5", {"bee04"});
    add_sp(net, "SP6", {"owl05"});
    add_sp(net, "SP7", {"sow09"});
    add_sp(net, "SP8", {"qfoo"});
    add_sp(net, "SP9", {"ant07"});
    add_sp(net, "SP10", {"ray08"});
    add_peer(net, "P1", "SP1", {"other"});
    add_peer(net, "P2", "SP1", {"qfoo"});
    add_peer(net, "P11", "SP8", {"qfoo"});

    StrategyIndex index;
    index.communities = Hypergraph::from_edges({{"SP1", "SP2"},
                                                {"SP2", "SP8", "SP9"},
                                                {"SP6", "SP10"},
                                                {"SP4", "SP6", "SP7"},
                                                {"SP1", "SP3"}});
    index.strategies = minimal_transversals(index.communities);
    CHECK(select_strategy(index.strategies, "SP1").members ==
          std::vector<std::string>{"SP1", "SP2", "SP6"});

    auto out = route_traversal(net, make_query("Q1", {"qfoo"}, "P1"), index, 0.3);
    CHECK_FALSE(out.fallback);
    CHECK(out.retrieved == std::vector<std::pair<std::string, std::string>>{{"P11", "SP8"},
                                                                            {"P2", "SP1"}});
    CHECK(format_trace(out) ==
          "1 P1 SP1 QUERY Q1\n"
          "2 SP1 P1 RESPONSE Q1\n"
          "2 SP1 SP2 FORWARD Q1\n"
          "2 SP1 SP6 FORWARD Q1\n"
          "3 SP2 SP8 FORWARD Q1\n"
          "4 SP8 P1 RESPONSE Q1\n");
    CHECK(out.sim_time == 4);
}

TEST_CASE("a singleton strategy keeps everything local") {
    Network net;
    add_sp(net, "SPA", {"ca"});
    add_peer(net, "P1", "SPA", {"alpha"});
    StrategyIndex index;
    index.communities = Hypergraph::from_edges({{"SPA"}});
    index.strategies = minimal_transversals(index.communities);

    auto out = route_traversal(net, make_query("Q1", {"alpha"}, "P1"), index, 0.5);
    CHECK(format_trace(out) ==
          "1 P1 SPA QUERY Q1\n"
          "2 SPA P1 RESPONSE Q1\n");
    CHECK(out.retrieved.size() == 1);
}

TEST_CASE("a home super-peer outside every strategy enters through the smallest one") {
    Network net;
    add_sp(net, "SPA", {"ca"});
    add_sp(net, "SPB", {"cb"});
    add_sp(net, "SPC", {"cc"});
    add_peer(net, "P1", "SPA", {"zz"});
    add_peer(net, "P2", "SPB", {"alpha"});
    StrategyIndex index;
    index.communities = Hypergraph::from_edges({{"SPB", "SPC"}});
    index.strategies = minimal_transversals(index.communities);  // {SPB}, {SPC}

    auto out = route_traversal(net, make_query("Q1", {"alpha"}, "P1"), index, 0.5);
    CHECK(out.fallback);
    // entry hop into {SPB}, which answers
    CHECK(format_trace(out) ==
          "1 P1 SPA QUERY Q1\n"
          "2 SPA SPB FORWARD Q1\n"
          "3 SPB P1 RESPONSE Q1\n");
}

TEST_CASE("policy invariants on a generated network") {
    NetworkGenParams params;
    params.n_peers = 60;
    params.n_superpeers = 6;
    auto net = build_network(params, 11);
    auto wl = generate_workload(net, 40, 0.2, 11, 0.35, 8, Exec::serial);

    std::vector<std::string> sp_ids;
    for (const auto& [id, sp] : net.superpeers) sp_ids.push_back(id);
    auto index = build_strategy_index(expertise_dataset(net), sp_ids, {0.3, 1}, Exec::serial);

    auto check_outcome = [&](const RoutingOutcome& out, const Query& q) {
        // no super-peer hears the same query twice
        std::map<std::string, int> deliveries;
        for (const auto& m : out.messages) {
            CHECK(m.t <= q.ttl);
            if ((m.kind == MsgKind::Query || m.kind == MsgKind::Forward) &&
                net.superpeers.count(m.to))
                deliveries[m.to]++;
        }
        for (const auto& [sp, n] : deliveries) CHECK(n == 1);
        // retrieved-set soundness: the home super-peer saw a qualifying score
        for (const auto& [peer, sp] : out.retrieved) {
            CHECK(net.peers.at(peer).home_sp == sp);
            CHECK(cap(net.superpeers.at(sp).rsc.at(peer), q.subject) > 0.35);
        }
    };

    for (const auto& q : wl.queries) {
        auto b = route_baseline(net, q, 0.35);
        auto t = route_traversal(net, q, index, 0.35);
        check_outcome(b, q);
        check_outcome(t, q);
        // purity
        CHECK(format_trace(route_baseline(net, q, 0.35)) == format_trace(b));
        CHECK(format_trace(route_traversal(net, q, index, 0.35)) == format_trace(t));
    }

    SUBCASE("small ttl truncates the chains") {
        for (auto q : wl.queries) {
            q.ttl = 2;
            auto b = route_baseline(net, q, 0.35);
            for (const auto& m : b.messages) CHECK(m.t <= 2);
            auto t = route_traversal(net, q, index, 0.35);
            for (const auto& m : t.messages) CHECK(m.t <= 2);
        }
    }
}

TEST_CASE("seeded fixture: traversal needs no more messages than the baseline") {
    NetworkGenParams params;
    params.n_peers = 40;
    params.n_superpeers = 10;
    auto net = build_network(params, 3);
    auto wl = generate_workload(net, 8, 0.0, 3, 0.45, 8, Exec::serial);

    std::vector<std::string> sp_ids;
    for (const auto& [id, sp] : net.superpeers) sp_ids.push_back(id);
    auto index = build_strategy_index(expertise_dataset(net), sp_ids, {0.2, 1}, Exec::serial);

    std::string baseline_traces, traversal_traces;
    for (const auto& q : wl.queries) {
        auto b = route_baseline(net, q, 0.45);
        auto t = route_traversal(net, q, index, 0.45);
        CHECK(t.messages.size() <= b.messages.size());
        baseline_traces += format_trace(b);
        traversal_traces += format_trace(t);
    }
    CHECK(baseline_traces == read_file(std::string(GOLDEN_DIR) + "/traces_baseline_seed3.txt"));
    CHECK(traversal_traces == read_file(std::string(GOLDEN_DIR) + "/traces_traversal_seed3.txt"));
}
