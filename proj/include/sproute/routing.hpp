#pragma once

#include <string>
#include <vector>

#include "sproute/hypergraph.hpp"
#include "sproute/network.hpp"

namespace sproute {

enum class MsgKind { Query, Forward, Response };

struct Message {
    int t = 0;  // arrival time; hop number within its causal chain
    std::string from;
    std::string to;
    MsgKind kind = MsgKind::Query;
};

/// Per-query trace: every message sent, the retrieved (peer, home-sp) pairs,
/// and the critical-path time (latest arrival). `fallback` flags a cold-start
/// knowledge route or an indirect strategy entry.
struct RoutingOutcome {
    std::string query_id;
    std::vector<Message> messages;
    std::vector<std::pair<std::string, std::string>> retrieved;  // sorted
    int sim_time = 0;
    bool fallback = false;
};

/// `<t> <from> <to> <kind> <query_id>` per message, one line each.
std::string format_trace(const RoutingOutcome& outcome);

/// The mined routing structure for the transversal policy: the community
/// hypergraph (cluster support sets plus singleton fill) and its minimal
/// transversals.
struct StrategyIndex {
    Hypergraph communities;
    std::vector<Strategy> strategies;
};

/// Builds the 1-Strategy index from super-peer expertise transactions.
StrategyIndex build_strategy_index(const TransactionDataset& expertise,
                                   const std::vector<std::string>& all_superpeers,
                                   const MiningParams& params, Exec exec = Exec::parallel);

/// Semantic baseline: the home super-peer answers from its intra-community
/// index and forwards one hop to every neighbour whose inter-community score
/// exceeds eps_acc; contacted super-peers answer locally only.
RoutingOutcome route_baseline(const Network& net, const Query& q, double eps_acc);

/// Knowledge route: the home super-peer answers locally and consults its
/// knowledge super-peer, which predicts the target super-peers with its
/// decision tree. An untrained index falls back to the baseline and flags the
/// outcome.
RoutingOutcome route_ksp(const Network& net, const Query& q, double eps_acc);

/// Among strategies containing home_sp, the smallest (cardinality, then
/// lexicographic members); when none contains it, the globally smallest.
/// Throws PrereqError("no strategies computed") on an empty set.
Strategy select_strategy(const std::vector<Strategy>& strategies, const std::string& home_sp);

/// 1-Strategy route: the query travels to every member of the selected
/// strategy; each member answers locally and relays once to cluster-mates
/// whose inter-community score exceeds eps_acc.
RoutingOutcome route_traversal(const Network& net, const Query& q, const StrategyIndex& index,
                               double eps_acc);

}  // namespace sproute
