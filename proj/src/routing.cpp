#include "sproute/routing.hpp"

#include <set>
#include <sstream>

namespace sproute {
namespace {

const char* kind_name(MsgKind k) {
    switch (k) {
        case MsgKind::Query: return "QUERY";
        case MsgKind::Forward: return "FORWARD";
        default: return "RESPONSE";
    }
}

struct RouteBuilder {
    const Network& net;
    const Query& q;
    double eps_acc;
    RoutingOutcome out;
    std::set<std::string> seen;  // super-peers that received the query

    explicit RouteBuilder(const Network& n, const Query& query, double eps)
        : net(n), q(query), eps_acc(eps) {
        out.query_id = q.query_id;
    }

    bool within_ttl(int t) const { return t <= q.ttl; }

    // The super-peer scans its intra-community index; relevant peers are
    // reported back to the origin in one response message.
    void answer_locally(const std::string& sp_id, int depth) {
        const auto& sp = net.superpeers.at(sp_id);
        bool any = false;
        for (const auto& [peer, summary] : sp.rsc) {
            if (cap(summary, q.subject) > eps_acc) {
                out.retrieved.emplace_back(peer, sp_id);
                any = true;
            }
        }
        if (any && within_ttl(depth + 1))
            out.messages.push_back({depth + 1, sp_id, q.origin_peer, MsgKind::Response});
        else if (any)
            // response suppressed by ttl: the peers do not count as retrieved
            out.retrieved.erase(
                std::remove_if(out.retrieved.begin(), out.retrieved.end(),
                               [&](const auto& r) { return r.second == sp_id; }),
                out.retrieved.end());
    }

    // Send the query to a super-peer (once) and let it answer.
    bool contact(const std::string& from, const std::string& to, int depth, MsgKind kind) {
        if (!within_ttl(depth) || seen.count(to)) return false;
        seen.insert(to);
        out.messages.push_back({depth, from, to, kind});
        answer_locally(to, depth);
        return true;
    }

    RoutingOutcome finish() {
        std::stable_sort(out.messages.begin(), out.messages.end(),
                         [](const Message& a, const Message& b) { return a.t < b.t; });
        std::sort(out.retrieved.begin(), out.retrieved.end());
        out.retrieved.erase(std::unique(out.retrieved.begin(), out.retrieved.end()),
                            out.retrieved.end());
        out.sim_time = 0;
        for (const auto& m : out.messages) out.sim_time = std::max(out.sim_time, m.t);
        return std::move(out);
    }
};

const std::string& home_of(const Network& net, const Query& q) {
    auto it = net.peers.find(q.origin_peer);
    if (it == net.peers.end()) throw ParseError("unknown peer '" + q.origin_peer + "'");
    return it->second.home_sp;
}

}  // namespace

std::string format_trace(const RoutingOutcome& outcome) {
    std::ostringstream out;
    for (const auto& m : outcome.messages)
        out << m.t << " " << m.from << " " << m.to << " " << kind_name(m.kind) << " "
            << outcome.query_id << "\n";
    return out.str();
}

StrategyIndex build_strategy_index(const TransactionDataset& expertise,
                                   const std::vector<std::string>& all_superpeers,
                                   const MiningParams& params, Exec exec) {
    StrategyIndex index;
    auto clusters = select_clusters(expertise, params, exec);
    index.communities = from_clusters(clusters, all_superpeers);
    index.strategies = minimal_transversals(index.communities, exec);
    return index;
}

RoutingOutcome route_baseline(const Network& net, const Query& q, double eps_acc) {
    const std::string& home = home_of(net, q);
    RouteBuilder rb(net, q, eps_acc);
    rb.contact(q.origin_peer, home, 1, MsgKind::Query);

    const auto& sp = net.superpeers.at(home);
    for (const auto& nb : sp.neighbors)
        if (sp.rsi.at(nb) > eps_acc) rb.contact(home, nb, 2, MsgKind::Forward);
    return rb.finish();
}

RoutingOutcome route_ksp(const Network& net, const Query& q, double eps_acc) {
    const std::string& home = home_of(net, q);

    // the home super-peer consults the first knowledge super-peer whose scope
    // contains it
    const std::string* ksp_id = nullptr;
    const KspInfo* ksp = nullptr;
    for (const auto& [id, info] : net.ksps)
        if (std::binary_search(info.scope.begin(), info.scope.end(), home)) {
            ksp_id = &id;
            ksp = &info;
            break;
        }
    if (!ksp) throw PrereqError("no knowledge super-peer covers '" + home + "'");

    if (!ksp->index || !ksp->index->trained()) {
        auto out = route_baseline(net, q, eps_acc);
        out.fallback = true;  // cold start
        return out;
    }

    RouteBuilder rb(net, q, eps_acc);
    rb.contact(q.origin_peer, home, 1, MsgKind::Query);
    if (rb.within_ttl(2)) {
        rb.out.messages.push_back({2, home, *ksp_id, MsgKind::Forward});
        auto predicted = ksp->index->predict(q.subject);
        for (const auto& sp : predicted) {
            if (sp == home || !net.superpeers.count(sp)) continue;
            rb.contact(*ksp_id, sp, 3, MsgKind::Forward);
        }
    }
    return rb.finish();
}

Strategy select_strategy(const std::vector<Strategy>& strategies, const std::string& home_sp) {
    if (strategies.empty()) throw PrereqError("no strategies computed");
    auto canonical_less = [](const Strategy& a, const Strategy& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    };
    const Strategy* best = nullptr;
    for (const auto& s : strategies) {
        if (!std::binary_search(s.members.begin(), s.members.end(), home_sp)) continue;
        if (!best || canonical_less(s, *best)) best = &s;
    }
    if (best) return *best;
    for (const auto& s : strategies)
        if (!best || canonical_less(s, *best)) best = &s;
    return *best;
}

RoutingOutcome route_traversal(const Network& net, const Query& q, const StrategyIndex& index,
                               double eps_acc) {
    const std::string& home = home_of(net, q);
    Strategy strat = select_strategy(index.strategies, home);
    bool member = std::binary_search(strat.members.begin(), strat.members.end(), home);

    // cluster-mates: every super-peer sharing a community hyperedge
    auto mates_of = [&](const std::string& sp) {
        std::set<std::string> mates;
        std::size_t v = index.communities.vertex_index(sp);
        if (v == Hypergraph::npos) return mates;
        for (std::size_t e = 0; e < index.communities.edge_count(); ++e)
            if (index.communities.edge_bits(e).test(v))
                for (const auto& m : index.communities.edge_members(e))
                    if (m != sp) mates.insert(m);
        return mates;
    };

    RouteBuilder rb(net, q, eps_acc);
    rb.contact(q.origin_peer, home, 1, MsgKind::Query);

    // (strategy member, arrival depth) in contact order
    std::vector<std::pair<std::string, int>> reached;
    if (member) {
        reached.emplace_back(home, 1);
        for (const auto& sp : strat.members)
            if (sp != home && rb.contact(home, sp, 2, MsgKind::Forward)) reached.emplace_back(sp, 2);
    } else {
        // the home super-peer is in no strategy: one extra hop into the
        // smallest one through its first member
        rb.out.fallback = true;
        const std::string& entry = strat.members.front();
        if (rb.contact(home, entry, 2, MsgKind::Forward)) {
            reached.emplace_back(entry, 2);
            for (const auto& sp : strat.members)
                if (sp != entry && rb.contact(entry, sp, 3, MsgKind::Forward))
                    reached.emplace_back(sp, 3);
        }
    }

    // Each strategy member relays once into its own cluster(s). The relay is
    // query-filtered: a mate is contacted only when its advertised theme
    // covers the subject above eps_acc, unlike the baseline's static
    // theme-pair forwarding.
    for (const auto& [sp, depth] : reached)
        for (const auto& mate : mates_of(sp)) {
            if (!net.superpeers.count(mate)) continue;
            double relevance = cap(Expertise{net.superpeers.at(mate).theme.concepts}, q.subject);
            if (relevance > eps_acc) rb.contact(sp, mate, depth + 1, MsgKind::Forward);
        }

    return rb.finish();
}

}  // namespace sproute
