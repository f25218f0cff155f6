#include "sproute/network.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sproute {
namespace {

std::string pad_num(int value, int width) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%0*d", width, value);
    return buf;
}

int digits(int n) { return n < 10 ? 1 : (n < 100 ? 2 : (n < 1000 ? 3 : 4)); }

std::vector<std::string> trigrams(const std::string& s) {
    std::vector<std::string> g;
    if (s.size() < 3) {
        g.push_back(s);
    } else {
        for (std::size_t i = 0; i + 3 <= s.size(); ++i) g.push_back(s.substr(i, 3));
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
    }
    return g;
}

}  // namespace

double similarity(const std::string& s, const std::string& e) {
    if (s == e) return 1.0;
    auto gs = trigrams(s), ge = trigrams(e);
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < gs.size() && j < ge.size()) {
        if (gs[i] == ge[j]) {
            ++inter, ++i, ++j;
        } else if (gs[i] < ge[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    std::size_t uni = gs.size() + ge.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double cap(const Expertise& expertise, const std::vector<std::string>& subject) {
    double total = 0.0;
    for (const auto& s : subject) {
        double best = 0.0;
        for (const auto& e : expertise.elements) best = std::max(best, similarity(s, e));
        total += best;
    }
    return total / static_cast<double>(subject.size());
}

double cap(const Expertise& expertise, const Query& query) { return cap(expertise, query.subject); }

double theme_affinity(const ThemeDescription& from, const ThemeDescription& to) {
    return cap(Expertise{from.concepts}, to.concepts);
}

void NetworkGenParams::validate() const {
    if (n_superpeers < 1) throw ConfigError("n_superpeers", "must be >= 1");
    if (n_peers < n_superpeers) throw ConfigError("n_peers", "must be >= n_superpeers");
    if (n_ksps < 1) throw ConfigError("n_ksps", "must be >= 1");
    if (items_per_theme < 1) throw ConfigError("items_per_theme", "must be >= 1");
    if (shared_pool < 0) throw ConfigError("shared_pool", "must be >= 0");
    if (shared_frac < 0.0 || shared_frac > 1.0)
        throw ConfigError("shared_frac", "must be in [0,1]");
    if (shared_frac > 0.0 && shared_pool < 1)
        throw ConfigError("shared_pool", "must be >= 1 when shared_frac > 0");
    if (cross_frac < 0.0 || cross_frac > 1.0) throw ConfigError("cross_frac", "must be in [0,1]");
    if (expertise_min < 1) throw ConfigError("expertise_min", "must be >= 1");
    if (expertise_max < expertise_min)
        throw ConfigError("expertise_max", "must be >= expertise_min");
    if (sp_extra_links < 0) throw ConfigError("sp_extra_links", "must be >= 0");
    if (eps_acc < 0.0 || eps_acc > 1.0) throw ConfigError("eps_acc", "must be in [0,1]");
}

Network build_network(const NetworkGenParams& params, std::uint64_t seed) {
    params.validate();
    std::mt19937_64 rng(seed);
    const int m = params.n_superpeers;
    const int n = params.n_peers;
    const int sp_w = std::max(2, digits(m));
    const int peer_w = std::max(3, digits(n));

    Network net;
    net.default_eps_acc = params.eps_acc;

    // Shared concept pool; labels are uniform-width so that string order is
    // numeric order and trigram overlap tracks label distance.
    std::vector<std::string> shared;
    for (int i = 0; i < params.shared_pool; ++i) shared.push_back("gs" + pad_num(i, 2));

    // Themes: one per super-peer, a slice of the shared pool plus unique
    // concepts.
    std::vector<std::string> sp_ids;
    std::vector<std::vector<std::string>> unique_concepts;  // expertise sampling pool
    int n_shared = static_cast<int>(std::lround(params.items_per_theme * params.shared_frac));
    n_shared = std::min(n_shared, params.shared_pool);
    for (int j = 0; j < m; ++j) {
        std::string sp_id = "SP" + pad_num(j + 1, sp_w);
        sp_ids.push_back(sp_id);
        ThemeDescription theme;
        theme.theme_id = "T" + pad_num(j + 1, sp_w);
        std::set<std::string> concepts;
        while (static_cast<int>(concepts.size()) < n_shared)
            concepts.insert(shared[rng_index(rng, shared.size())]);
        int uniq = params.items_per_theme - static_cast<int>(concepts.size());
        // random suffixes keep unrelated concepts dissimilar under the
        // trigram measure (no accidental q01/q02-style gradients)
        std::set<std::string> own_set;
        while (static_cast<int>(own_set.size()) < uniq) {
            std::string label = "t" + pad_num(j + 1, sp_w);
            for (int c = 0; c < 4; ++c) label += static_cast<char>('a' + rng() % 26);
            own_set.insert(label);
        }
        std::vector<std::string> own(own_set.begin(), own_set.end());
        concepts.insert(own.begin(), own.end());
        // peers specialize in the distinctive part of their theme; the shared
        // concepts are common vocabulary that drives theme-level similarity
        unique_concepts.push_back(own.empty()
                                      ? std::vector<std::string>(concepts.begin(), concepts.end())
                                      : own);
        theme.concepts.assign(concepts.begin(), concepts.end());
        // a short IsA chain plus one role, acyclic by construction
        for (std::size_t c = 1; c < theme.concepts.size() && c <= 2; ++c)
            theme.relations.push_back({theme.concepts[c], RelationKind::IsA, theme.concepts[0]});
        if (theme.concepts.size() >= 2)
            theme.relations.push_back({theme.concepts[0], RelationKind::Role, theme.concepts[1]});
        net.superpeers[sp_id].theme = std::move(theme);
    }

    // Backbone: ring for connectivity plus random chords.
    auto add_sp_link = [&](int a, int b) {
        if (a == b) return;
        net.link(sp_ids[static_cast<std::size_t>(a)], sp_ids[static_cast<std::size_t>(b)]);
    };
    if (m > 1)
        for (int j = 0; j < m; ++j) add_sp_link(j, (j + 1) % m);
    for (int j = 0; j < m; ++j)
        for (int c = 0; c < params.sp_extra_links; ++c)
            add_sp_link(j, static_cast<int>(rng_index(rng, static_cast<std::size_t>(m))));
    for (const auto& [a, b] : net.links) {
        if (net.superpeers.count(a) && net.superpeers.count(b)) {
            net.superpeers[a].neighbors.push_back(b);
            net.superpeers[b].neighbors.push_back(a);
        }
    }
    for (auto& [id, sp] : net.superpeers) sp.neighbors = sorted_unique(std::move(sp.neighbors));

    // Initial inter-community index for every backbone pair.
    for (auto& [id, sp] : net.superpeers)
        for (const auto& nb : sp.neighbors)
            sp.rsi[nb] = theme_affinity(sp.theme, net.superpeers[nb].theme);

    // Knowledge super-peer scopes are "everything minus a small hole". Holes
    // are disjoint and each block keeps its first member in every scope, which
    // yields scope_i | scope_j = all and scope_i & scope_j nonempty for i != j.
    const int k = params.n_ksps;
    std::vector<std::vector<std::string>> holes(static_cast<std::size_t>(k));
    if (k >= 2) {
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
        for (int j = 0; j < m; ++j) blocks[static_cast<std::size_t>(j % k)].push_back(j);
        for (int i = 0; i < k; ++i)
            for (std::size_t b = 1; b < blocks[static_cast<std::size_t>(i)].size(); ++b)
                holes[static_cast<std::size_t>(i)].push_back(
                    sp_ids[static_cast<std::size_t>(blocks[static_cast<std::size_t>(i)][b])]);
    }
    for (int i = 0; i < k; ++i) {
        std::string ksp_id = "KSP" + pad_num(i + 1, digits(k));
        auto& info = net.ksps[ksp_id];
        const auto& hole = holes[static_cast<std::size_t>(i)];
        for (const auto& sp : sp_ids)
            if (std::find(hole.begin(), hole.end(), sp) == hole.end()) info.scope.push_back(sp);
        for (const auto& sp : info.scope) net.link(ksp_id, sp);
    }

    std::vector<std::string> universe;
    for (const auto& [id, sp] : net.superpeers)
        universe.insert(universe.end(), sp.theme.concepts.begin(), sp.theme.concepts.end());
    net.item_universe = sorted_unique(std::move(universe));

    // Peers: expertise sampled mostly from a home-intended theme with some
    // spill into ring-adjacent and random themes, then advertised.
    for (int i = 0; i < n; ++i) {
        std::string pid = "P" + pad_num(i + 1, peer_w);
        int intended = i % m;
        int size = rng_range(rng, params.expertise_min, params.expertise_max);
        std::set<std::string> elements;
        int guard = 0;
        while (static_cast<int>(elements.size()) < size && guard++ < 1000) {
            int theme_idx = intended;
            if (rng_unit(rng) < params.cross_frac && m > 1) {
                if (rng() % 2) {
                    theme_idx = (intended + (rng() % 2 ? 1 : m - 1)) % m;
                } else {
                    theme_idx = static_cast<int>(rng_index(rng, static_cast<std::size_t>(m)));
                }
            }
            const auto& pool = unique_concepts[static_cast<std::size_t>(theme_idx)];
            elements.insert(pool[rng_index(rng, pool.size())]);
        }
        Expertise exp{std::vector<std::string>(elements.begin(), elements.end())};

        // assignment rule: argmax cap against theme concepts, lowest sp id on ties
        std::string best_sp = sp_ids[0];
        double best = -1.0;
        for (const auto& sp_id : sp_ids) {
            double score = cap(exp, net.superpeers[sp_id].theme.concepts);
            if (score > best) {
                best = score;
                best_sp = sp_id;
            }
        }
        DomainAdvertisement da{pid, std::move(exp), net.superpeers[best_sp].theme.theme_id,
                               params.eps_acc, 1};
        advertise(net, da);
    }
    return net;
}

void advertise(Network& net, const DomainAdvertisement& da) {
    if (da.expertise.elements.empty()) throw ParseError("advertisement with empty expertise");
    if (da.ttl < 1) throw ParseError("advertisement ttl must be >= 1");

    std::string home;
    for (const auto& [id, sp] : net.superpeers)
        if (sp.theme.theme_id == da.topic) {
            home = id;
            break;
        }
    if (home.empty()) throw ParseError("unknown topic '" + da.topic + "'");

    // a re-advertisement with a different topic moves the peer
    auto prev = net.peers.find(da.peer_id);
    if (prev != net.peers.end() && prev->second.home_sp != home) {
        auto& old_sp = net.superpeers[prev->second.home_sp];
        old_sp.rsc.erase(da.peer_id);
        old_sp.members.erase(std::remove(old_sp.members.begin(), old_sp.members.end(), da.peer_id),
                             old_sp.members.end());
        net.links.erase(da.peer_id < prev->second.home_sp
                            ? std::make_pair(da.peer_id, prev->second.home_sp)
                            : std::make_pair(prev->second.home_sp, da.peer_id));
    }

    auto& sp = net.superpeers[home];
    Expertise exp{sorted_unique(da.expertise.elements)};
    net.peers[da.peer_id] = PeerInfo{exp, home};
    sp.rsc[da.peer_id] = std::move(exp);
    if (std::find(sp.members.begin(), sp.members.end(), da.peer_id) == sp.members.end()) {
        sp.members.push_back(da.peer_id);
        std::sort(sp.members.begin(), sp.members.end());
    }
    net.link(da.peer_id, home);

    // refresh the home super-peer's inter-community index; advertisements are
    // not forwarded beyond the home super-peer (ttl applies to forwarded
    // copies only)
    for (const auto& nb : sp.neighbors)
        sp.rsi[nb] = theme_affinity(sp.theme, net.superpeers[nb].theme);
}

std::string dump_network(const Network& net) {
    std::ostringstream out;
    char buf[64];
    out << "PEERS\n";
    for (const auto& [id, p] : net.peers)
        out << id << " home=" << p.home_sp << " expertise=" << join(p.expertise.elements, ",")
            << "\n";
    out << "SUPERPEERS\n";
    for (const auto& [id, sp] : net.superpeers) {
        out << id << " theme=" << sp.theme.theme_id << " concepts=" << join(sp.theme.concepts, ",")
            << " members=" << join(sp.members, ",") << " neighbors=" << join(sp.neighbors, ",")
            << " rsi=";
        bool first = true;
        for (const auto& [nb, score] : sp.rsi) {
            std::snprintf(buf, sizeof buf, "%s%s:%.6f", first ? "" : ",", nb.c_str(), score);
            out << buf;
            first = false;
        }
        out << "\n";
    }
    out << "LINKS\n";
    for (const auto& [a, b] : net.links) out << a << " " << b << "\n";
    out << "KSPS\n";
    for (const auto& [id, ksp] : net.ksps)
        out << id << " scope=" << join(ksp.scope, ",")
            << " trained=" << (ksp.index && ksp.index->trained() ? 1 : 0) << "\n";
    return out.str();
}

}  // namespace sproute
