#include "sproute/sim.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace sproute {
namespace {

std::string query_id_for(int k, int n_total) {
    int width = n_total >= 1000 ? 4 : (n_total >= 100 ? 3 : (n_total >= 10 ? 2 : 1));
    char buf[16];
    std::snprintf(buf, sizeof buf, "Q%0*d", width, k + 1);
    return buf;
}

// Answering super-peers of an outcome, for the knowledge query log.
std::vector<std::string> answering_sps(const RoutingOutcome& o) {
    std::set<std::string> sps;
    for (const auto& [peer, sp] : o.retrieved) sps.insert(sp);
    return {sps.begin(), sps.end()};
}

struct Runner {
    const Network& base;
    const SimConfig& cfg;
    Network net;  // working copy; holds trained knowledge indexes
    StrategyIndex strategies;
    std::vector<QueryLogRecord> log;
    int measured_since_retrain = 0;

    Runner(const Network& n, Policy policy, const Workload& wl, const SimConfig& c)
        : base(n), cfg(c), net(n) {
        if (policy == Policy::traversal) {
            std::vector<std::string> sp_ids;
            for (const auto& [id, sp] : net.superpeers) sp_ids.push_back(id);
            strategies = build_strategy_index(expertise_dataset(net), sp_ids, cfg.mining, cfg.exec);
        }
        if (policy == Policy::ksp) {
            if (net.ksps.empty()) throw PrereqError("knowledge index: no knowledge super-peers");
            int n_boot = static_cast<int>(std::floor(cfg.bootstrap_frac *
                                                     static_cast<double>(wl.queries.size())));
            for (int i = 0; i < n_boot; ++i) {
                const auto& q = wl.queries[static_cast<std::size_t>(i)];
                auto outcome = route_baseline(net, q, cfg.eps_acc);
                log.push_back({q.subject, answering_sps(outcome)});
            }
            retrain();
        }
    }

    void retrain() {
        if (log.empty()) return;
        auto tree = train(log, cfg.max_depth, cfg.min_leaf);
        for (auto& [id, ksp] : net.ksps) ksp.index = tree;
    }

    RoutingOutcome route(Policy policy, const Query& q) {
        switch (policy) {
            case Policy::baseline: return route_baseline(net, q, cfg.eps_acc);
            case Policy::ksp: {
                auto out = route_ksp(net, q, cfg.eps_acc);
                log.push_back({q.subject, answering_sps(out)});
                if (++measured_since_retrain >= cfg.retrain_every) {
                    retrain();
                    measured_since_retrain = 0;
                }
                return out;
            }
            default: return route_traversal(net, q, strategies, cfg.eps_acc);
        }
    }
};

}  // namespace

const char* policy_name(Policy p) {
    switch (p) {
        case Policy::baseline: return "baseline";
        case Policy::ksp: return "ksp";
        default: return "traversal";
    }
}

Policy policy_from_name(const std::string& name) {
    if (name == "baseline") return Policy::baseline;
    if (name == "ksp") return Policy::ksp;
    if (name == "traversal") return Policy::traversal;
    throw ConfigError("policies", "unknown policy '" + name + "'");
}

std::string metrics_csv_header() {
    return "policy,seed,n_peers,n_sps,n_queries,total_messages,mean_messages,mean_time,"
           "precision,recall";
}

std::string metrics_csv_row(const MetricsReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%llu,%d,%d,%d,%llu,%.6f,%.6f,%.6f,%.6f",
                  r.policy.c_str(), static_cast<unsigned long long>(r.seed), r.n_peers,
                  r.n_superpeers, r.n_queries, static_cast<unsigned long long>(r.total_messages),
                  r.mean_messages, r.mean_sim_time, r.precision, r.recall);
    return buf;
}

Workload generate_workload(const Network& net, int n_queries, double noise, std::uint64_t seed,
                           double eps_acc, int ttl, Exec exec) {
    if (n_queries < 1) throw ConfigError("n_queries", "must be >= 1");
    if (noise < 0.0 || noise > 1.0) throw ConfigError("noise", "must be in [0,1]");
    std::mt19937_64 rng(seed);

    std::vector<std::string> peer_ids;
    for (const auto& [id, p] : net.peers) peer_ids.push_back(id);
    if (peer_ids.empty()) throw PrereqError("network has no peers");

    Workload wl;
    wl.eps_acc = eps_acc;
    for (int k = 0; k < n_queries; ++k) {
        const std::string& origin = peer_ids[rng_index(rng, peer_ids.size())];
        const auto& expertise = net.peers.at(origin).expertise.elements;
        int want = std::min<int>(rng_range(rng, 1, 3), static_cast<int>(expertise.size()));
        std::set<std::string> subject;
        while (static_cast<int>(subject.size()) < want)
            subject.insert(expertise[rng_index(rng, expertise.size())]);
        std::set<std::string> noised;
        for (const auto& s : subject) {
            if (noise > 0.0 && rng_unit(rng) < noise && !net.item_universe.empty())
                noised.insert(net.item_universe[rng_index(rng, net.item_universe.size())]);
            else
                noised.insert(s);
        }
        Query q;
        q.query_id = query_id_for(k, n_queries);
        q.subject.assign(noised.begin(), noised.end());
        q.origin_peer = origin;
        q.ttl = ttl;
        wl.queries.push_back(std::move(q));
    }

    // ground truth by exhaustive scan; per-query scans are independent
    std::vector<std::vector<std::string>> truth(wl.queries.size());
    auto scan = [&](std::size_t i) {
        for (const auto& [pid, info] : net.peers)
            if (cap(info.expertise, wl.queries[i].subject) > eps_acc) truth[i].push_back(pid);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < wl.queries.size(); ++i) scan(i);
    } else {
        for (std::size_t i = 0; i < wl.queries.size(); ++i) scan(i);
    }
    for (std::size_t i = 0; i < wl.queries.size(); ++i)
        wl.ground_truth[wl.queries[i].query_id] = std::move(truth[i]);
    return wl;
}

std::vector<RoutingOutcome> run_traces(const Network& net, Policy policy, const Workload& wl,
                                       const SimConfig& cfg) {
    Runner runner(net, policy, wl, cfg);
    int first = 0;
    if (policy == Policy::ksp)
        first = static_cast<int>(
            std::floor(cfg.bootstrap_frac * static_cast<double>(wl.queries.size())));
    std::vector<RoutingOutcome> out;
    for (std::size_t i = static_cast<std::size_t>(first); i < wl.queries.size(); ++i)
        out.push_back(runner.route(policy, wl.queries[i]));
    return out;
}

MetricsReport run(const Network& net, Policy policy, const Workload& wl, const SimConfig& cfg) {
    auto traces = run_traces(net, policy, wl, cfg);

    MetricsReport r;
    r.policy = policy_name(policy);
    r.n_peers = static_cast<int>(net.peers.size());
    r.n_superpeers = static_cast<int>(net.superpeers.size());
    r.n_queries = static_cast<int>(traces.size());

    std::uint64_t total_time = 0;
    std::uint64_t hits = 0, retrieved = 0, relevant = 0;
    std::size_t offset = wl.queries.size() - traces.size();
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& t = traces[i];
        r.total_messages += t.messages.size();
        total_time += static_cast<std::uint64_t>(t.sim_time);
        auto truth_it = wl.ground_truth.find(wl.queries[offset + i].query_id);
        if (truth_it == wl.ground_truth.end())
            throw PrereqError("workload ground truth missing for query '" +
                              wl.queries[offset + i].query_id + "'");
        const auto& truth = truth_it->second;
        retrieved += t.retrieved.size();
        relevant += truth.size();
        for (const auto& [peer, sp] : t.retrieved)
            if (std::binary_search(truth.begin(), truth.end(), peer)) ++hits;
    }
    if (r.n_queries > 0) {
        r.mean_messages =
            static_cast<double>(r.total_messages) / static_cast<double>(r.n_queries);
        r.mean_sim_time = static_cast<double>(total_time) / static_cast<double>(r.n_queries);
    }
    // micro-averaged; an empty denominator is vacuously perfect
    r.precision = retrieved == 0 ? 1.0
                                 : static_cast<double>(hits) / static_cast<double>(retrieved);
    r.recall = relevant == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(relevant);
    return r;
}

TransactionDataset expertise_dataset(
    const Network& net,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& warmup) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    if (!warmup.empty()) {
        std::map<std::string, std::set<std::string>> per_sp;
        for (const auto& [sp, components] : warmup)
            per_sp[sp].insert(components.begin(), components.end());
        for (const auto& [sp, items] : per_sp) {
            if (items.empty() || !net.superpeers.count(sp)) continue;
            rows.emplace_back(sp, std::vector<std::string>(items.begin(), items.end()));
        }
        if (!rows.empty()) return TransactionDataset::from_rows(std::move(rows));
        // a warm-up with zero successful queries falls through to expertise mode
    }
    for (const auto& [id, sp] : net.superpeers) {
        std::set<std::string> items;
        for (const auto& [peer, e] : sp.rsc) items.insert(e.elements.begin(), e.elements.end());
        if (items.empty()) continue;  // empty transactions are forbidden
        rows.emplace_back(id, std::vector<std::string>(items.begin(), items.end()));
    }
    return TransactionDataset::from_rows(std::move(rows));
}

}  // namespace sproute
