#pragma once

#include <map>
#include <string>
#include <vector>

#include "sproute/dataset.hpp"
#include "sproute/network.hpp"
#include "sproute/routing.hpp"

namespace sproute {

enum class Policy { baseline, ksp, traversal };

const char* policy_name(Policy p);
Policy policy_from_name(const std::string& name);

/// A scripted or generated query batch plus its relevance ground truth
/// (exhaustive scan: every peer whose cap against the query exceeds eps_acc).
struct Workload {
    std::vector<Query> queries;
    std::map<std::string, std::vector<std::string>> ground_truth;  // query id -> peer ids
    double eps_acc = 0.5;
};

struct SimConfig {
    double eps_acc = 0.5;
    int ttl = 8;
    MiningParams mining{0.2, 1};
    int max_depth = 12;
    int min_leaf = 1;
    double bootstrap_frac = 0.2;  // share of the workload that trains the knowledge index
    int retrain_every = 100;      // knowledge index refresh period, in measured queries
    Exec exec = Exec::parallel;
};

/// Aggregated per-run metrics; one CSV row.
struct MetricsReport {
    std::string policy;
    std::uint64_t seed = 0;
    int n_peers = 0;
    int n_superpeers = 0;
    int n_queries = 0;
    std::uint64_t total_messages = 0;
    double mean_messages = 0.0;
    double mean_sim_time = 0.0;
    double precision = 1.0;
    double recall = 1.0;
};

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& r);

/// Deterministic workload: each query's subject is sampled from a random
/// peer's expertise (1-3 elements), each element swapped for a random universe
/// item with probability `noise`; ground truth by exhaustive scan at eps_acc.
Workload generate_workload(const Network& net, int n_queries, double noise, std::uint64_t seed,
                           double eps_acc, int ttl = 8, Exec exec = Exec::parallel);

/// Executes one policy over the workload and aggregates messages, critical
/// path time and micro-averaged precision/recall. The knowledge policy
/// bootstraps its index on the first bootstrap_frac of the workload (routed
/// via the baseline) and measures the rest; the transversal policy mines its
/// strategies from the network expertise dataset.
MetricsReport run(const Network& net, Policy policy, const Workload& wl, const SimConfig& cfg);

/// Per-query traces from a run; same execution as run(). Used by trace tests
/// and the metric-identity checks.
std::vector<RoutingOutcome> run_traces(const Network& net, Policy policy, const Workload& wl,
                                       const SimConfig& cfg);

/// Super-peer expertise transactions: the union of each super-peer's member
/// expertise, or, given a non-empty warm-up log of (super-peer, components)
/// entries from successfully answered queries, those components instead.
/// Super-peers with no items are omitted.
TransactionDataset expertise_dataset(
    const Network& net,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& warmup = {});

}  // namespace sproute
