#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sproute/knowledge.hpp"
#include "sproute/util.hpp"

namespace sproute {

enum class RelationKind { Role, IsA };

/// The semantic domain a super-peer publishes: labeled concepts plus Role/IsA
/// relations among them. Relations are carried for model fidelity; similarity
/// scoring works on the flat concept labels.
struct ThemeDescription {
    std::string theme_id;
    std::vector<std::string> concepts;  // sorted
    struct Relation {
        std::string from;
        RelationKind kind;
        std::string to;
    };
    std::vector<Relation> relations;
};

struct Expertise {
    std::vector<std::string> elements;  // sorted, non-empty
};

/// The advertisement a joining peer sends to register its expertise.
struct DomainAdvertisement {
    std::string peer_id;
    Expertise expertise;
    std::string topic;  // theme id
    double eps_acc = 0.5;
    int ttl = 1;
};

struct Query {
    std::string query_id;
    std::vector<std::string> subject;  // sorted, non-empty
    std::string origin_peer;
    int ttl = 8;
};

struct PeerInfo {
    Expertise expertise;
    std::string home_sp;
};

struct SuperPeerInfo {
    ThemeDescription theme;
    std::vector<std::string> members;                 // peer ids, sorted
    std::vector<std::string> neighbors;               // sp ids, sorted
    std::map<std::string, Expertise> rsc;             // intra-community index
    std::map<std::string, double> rsi;                // inter-community index
};

struct KspInfo {
    std::vector<std::string> scope;  // sp ids, sorted
    std::optional<DecisionTree> index;
};

/// The hybrid super-peer network: a value type owned by one simulation run.
struct Network {
    std::map<std::string, PeerInfo> peers;
    std::map<std::string, SuperPeerInfo> superpeers;
    std::map<std::string, KspInfo> ksps;
    std::set<std::pair<std::string, std::string>> links;  // normalized (lo, hi)
    std::vector<std::string> item_universe;               // all known item labels, sorted
    double default_eps_acc = 0.5;

    bool linked(const std::string& a, const std::string& b) const {
        return links.count(a < b ? std::make_pair(a, b) : std::make_pair(b, a)) > 0;
    }
    void link(const std::string& a, const std::string& b) {
        links.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
};

/// Character-trigram Jaccard similarity of two identifiers; 1 when identical,
/// symmetric, in [0,1]. Identifiers shorter than three characters contribute
/// themselves as a single gram.
double similarity(const std::string& s, const std::string& e);

/// Mean over subject elements of the best expertise match:
/// (1/|subject|) * sum_s max_e similarity(s, e).
double cap(const Expertise& expertise, const std::vector<std::string>& subject);
double cap(const Expertise& expertise, const Query& query);

/// Theme-vs-theme relevance used for the inter-community index: how well
/// `from`'s concepts cover `to`'s concepts.
double theme_affinity(const ThemeDescription& from, const ThemeDescription& to);

struct NetworkGenParams {
    int n_peers = 300;
    int n_superpeers = 10;
    int n_ksps = 1;
    int items_per_theme = 14;
    int shared_pool = 10;      // size of the global shared-concept pool
    double shared_frac = 0.6;  // fraction of each theme drawn from that pool
    double cross_frac = 0.08;  // chance an expertise element leaves the home theme
    int expertise_min = 3;
    int expertise_max = 6;
    int sp_extra_links = 10;   // backbone chords per super-peer beyond the ring
    double eps_acc = 0.5;

    void validate() const;
};

/// Deterministic generation: themes with shared-plus-unique concept pools, a
/// connected super-peer backbone (ring plus chords), expertise-driven peer
/// assignment (argmax cap against theme concepts, ties to the lowest sp id),
/// knowledge super-peer scopes satisfying the pairwise union/intersection
/// properties, and one processed advertisement per peer.
Network build_network(const NetworkGenParams& params, std::uint64_t seed);

/// Registers (or re-registers) a peer: upserts the home super-peer's RSC entry
/// and recomputes its RSI entries. Throws ParseError on an unknown topic.
void advertise(Network& net, const DomainAdvertisement& da);

/// Deterministic text dump (sections PEERS / SUPERPEERS / LINKS / KSPS).
std::string dump_network(const Network& net);

}  // namespace sproute
