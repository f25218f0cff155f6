#include "sproute/hypergraph.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace sproute {
namespace {

// Canonical order: cardinality, then lexicographic member names. Vertex
// indices follow the sorted vertex list, so index sequences compare the same
// way as name sequences.
bool bits_canonical_less(const Bitset& a, const Bitset& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.indices() < b.indices();
}

std::vector<Strategy> to_strategies(const Hypergraph& h, std::vector<Bitset> sets) {
    std::sort(sets.begin(), sets.end(), bits_canonical_less);
    std::vector<Strategy> out;
    out.reserve(sets.size());
    for (const auto& s : sets) {
        Strategy st;
        for (auto i : s.indices()) st.members.push_back(h.vertex_name(i));
        out.push_back(std::move(st));
    }
    return out;
}

}  // namespace

Hypergraph Hypergraph::from_edges(const std::vector<std::vector<std::string>>& edges,
                                  std::vector<std::string> vertices) {
    Hypergraph h;
    std::set<std::string> vs(vertices.begin(), vertices.end());
    for (const auto& e : edges) vs.insert(e.begin(), e.end());
    h.vertices_.assign(vs.begin(), vs.end());

    std::set<std::vector<std::size_t>> seen;
    std::vector<Bitset> uniq;
    for (const auto& e : edges) {
        if (e.empty()) throw ParseError("empty hyperedge");
        Bitset b(h.vertices_.size());
        for (const auto& v : e) b.set(h.vertex_index(v));
        auto key = b.indices();
        if (seen.insert(key).second) uniq.push_back(std::move(b));
    }
    std::sort(uniq.begin(), uniq.end(), bits_canonical_less);
    h.edges_ = std::move(uniq);
    return h;
}

Hypergraph Hypergraph::parse(std::istream& in) {
    std::vector<std::vector<std::string>> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto members = split_ws(line);
        edges.push_back(std::move(members));
    }
    return from_edges(edges);
}

Hypergraph Hypergraph::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse(in);
}

std::string Hypergraph::format() const {
    std::ostringstream out;
    for (std::size_t e = 0; e < edges_.size(); ++e) out << join(edge_members(e), " ") << "\n";
    return out.str();
}

std::vector<std::string> Hypergraph::edge_members(std::size_t e) const {
    std::vector<std::string> out;
    for (auto i : edges_[e].indices()) out.push_back(vertices_[i]);
    return out;
}

std::size_t Hypergraph::vertex_index(const std::string& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return npos;
    return static_cast<std::size_t>(it - vertices_.begin());
}

Bitset Hypergraph::to_bits(const std::vector<std::string>& members) const {
    Bitset b(vertices_.size());
    for (const auto& m : members) {
        std::size_t i = vertex_index(m);
        if (i == npos) throw ParseError("unknown vertex '" + m + "'");
        b.set(i);
    }
    return b;
}

Hypergraph from_clusters(const std::vector<Cluster>& clusters,
                         const std::vector<std::string>& all_superpeers) {
    std::set<std::string> known(all_superpeers.begin(), all_superpeers.end());
    std::set<std::string> covered;
    std::vector<std::vector<std::string>> edges;
    for (const auto& c : clusters) {
        for (const auto& sp : c.support)
            if (!known.count(sp))
                throw ParseError("cluster support member '" + sp + "' is not a super-peer");
        edges.push_back(c.support);
        covered.insert(c.support.begin(), c.support.end());
    }
    for (const auto& sp : all_superpeers)
        if (!covered.count(sp)) edges.push_back({sp});
    return Hypergraph::from_edges(edges, all_superpeers);
}

bool is_transversal(const Hypergraph& h, const std::vector<std::string>& s) {
    Bitset b = h.to_bits(s);
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        if (!b.intersects(h.edge_bits(e))) return false;
    return true;
}

bool is_minimal_transversal(const Hypergraph& h, const std::vector<std::string>& s) {
    Bitset b = h.to_bits(s);
    // Transversal, and every member is critical: some edge meets s in exactly
    // that member (single-removal test; enough by monotonicity).
    Bitset critical(h.vertices().size());
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        Bitset x = b & h.edge_bits(e);
        auto idx = x.indices();
        if (idx.empty()) return false;
        if (idx.size() == 1) critical.set(idx[0]);
    }
    return critical == b;
}

std::vector<Strategy> minimal_transversals(const Hypergraph& h, Exec exec) {
    if (h.edge_count() == 0) throw PrereqError("no constraints");
    const std::size_t nv = h.vertices().size();

    std::vector<Bitset> current;
    for (auto v : h.edge_bits(0).indices()) {
        Bitset b(nv);
        b.set(v);
        current.push_back(std::move(b));
    }

    for (std::size_t e = 1; e < h.edge_count(); ++e) {
        const Bitset& edge = h.edge_bits(e);
        std::vector<Bitset> kept;
        std::vector<Bitset> ext;
        for (const auto& t : current) {
            if (t.intersects(edge)) {
                kept.push_back(t);
            } else {
                for (auto v : edge.indices()) {
                    Bitset c = t;
                    c.set(v);
                    ext.push_back(std::move(c));
                }
            }
        }
        std::sort(ext.begin(), ext.end());
        ext.erase(std::unique(ext.begin(), ext.end()), ext.end());

        // A candidate survives unless a kept transversal is a subset of it or
        // another extension is a proper subset. Checking against the full
        // (unfiltered) extension list is sound: if c' < c got dropped via some
        // kept k <= c', then k <= c drops c as well.
        std::vector<char> dead(ext.size(), 0);
        auto check = [&](std::size_t i) {
            for (const auto& k : kept)
                if (k.is_subset_of(ext[i])) {
                    dead[i] = 1;
                    return;
                }
            for (std::size_t j = 0; j < ext.size(); ++j)
                if (j != i && ext[j].is_subset_of(ext[i]) && ext[j] != ext[i]) {
                    dead[i] = 1;
                    return;
                }
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (std::size_t i = 0; i < ext.size(); ++i) check(i);
        } else {
            for (std::size_t i = 0; i < ext.size(); ++i) check(i);
        }

        current = std::move(kept);
        for (std::size_t i = 0; i < ext.size(); ++i)
            if (!dead[i]) current.push_back(std::move(ext[i]));
    }
    return to_strategies(h, std::move(current));
}

std::vector<Strategy> minimal_transversals_bruteforce(const Hypergraph& h, Exec exec) {
    if (h.edge_count() == 0) throw PrereqError("no constraints");
    const std::size_t nv = h.vertices().size();
    if (nv > 20) throw PrereqError("oracle too large");

    std::vector<std::uint32_t> edge_masks;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        std::uint32_t m = 0;
        for (auto i : h.edge_bits(e).indices()) m |= (1u << i);
        edge_masks.push_back(m);
    }

    const std::uint64_t total = std::uint64_t{1} << nv;
    auto minimal = [&](std::uint32_t mask) {
        std::uint32_t critical = 0;
        for (auto em : edge_masks) {
            std::uint32_t x = em & mask;
            if (x == 0) return false;
            if ((x & (x - 1)) == 0) critical |= x;
        }
        return critical == mask;
    };

    // Fixed chunking keeps the result independent of the thread count.
    const std::size_t n_chunks = 64;
    std::vector<std::vector<std::uint32_t>> chunk_hits(n_chunks);
    auto run_chunk = [&](std::size_t c) {
        std::uint64_t lo = 1 + (total - 1) * c / n_chunks;
        std::uint64_t hi = 1 + (total - 1) * (c + 1) / n_chunks;
        for (std::uint64_t m = lo; m < hi; ++m)
            if (minimal(static_cast<std::uint32_t>(m)))
                chunk_hits[c].push_back(static_cast<std::uint32_t>(m));
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    }

    std::vector<Bitset> sets;
    for (const auto& hits : chunk_hits)
        for (auto m : hits) {
            Bitset b(nv);
            for (std::size_t i = 0; i < nv; ++i)
                if (m & (1u << i)) b.set(i);
            sets.push_back(std::move(b));
        }
    return to_strategies(h, std::move(sets));
}

}  // namespace sproute
