#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sproute/mining.hpp"
#include "sproute/util.hpp"

namespace sproute {

/// A hypergraph over string vertex ids. Hyperedges are non-empty vertex
/// subsets; duplicates collapse. Edges are kept in canonical order
/// (cardinality, then lexicographic member list).
class Hypergraph {
  public:
    Hypergraph() = default;

    /// `vertices` may name vertices beyond those used by edges (isolated
    /// vertices are allowed); every edge member must be listed.
    static Hypergraph from_edges(const std::vector<std::vector<std::string>>& edges,
                                 std::vector<std::string> vertices = {});

    /// One hyperedge per line, vertex ids whitespace-separated. `#` comments
    /// and blank lines are skipped.
    static Hypergraph parse(std::istream& in);
    static Hypergraph parse_file(const std::string& path);
    std::string format() const;

    const std::vector<std::string>& vertices() const { return vertices_; }
    std::size_t edge_count() const { return edges_.size(); }
    const Bitset& edge_bits(std::size_t e) const { return edges_[e]; }
    std::vector<std::string> edge_members(std::size_t e) const;

    std::size_t vertex_index(const std::string& v) const;
    const std::string& vertex_name(std::size_t i) const { return vertices_[i]; }

    Bitset to_bits(const std::vector<std::string>& members) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    std::vector<std::string> vertices_;  // sorted
    std::vector<Bitset> edges_;          // canonical order, deduped
};

/// One minimal transversal of the community hypergraph; members sorted.
struct Strategy {
    std::vector<std::string> members;
    bool operator==(const Strategy&) const = default;
};

/// Vertices = all_superpeers; hyperedges = the distinct cluster support sets
/// plus a singleton edge for every super-peer no cluster covers, so each
/// strategy keeps representing the whole network.
Hypergraph from_clusters(const std::vector<Cluster>& clusters,
                         const std::vector<std::string>& all_superpeers);

bool is_transversal(const Hypergraph& h, const std::vector<std::string>& s);
bool is_minimal_transversal(const Hypergraph& h, const std::vector<std::string>& s);

/// All minimal transversals, computed edge-by-edge (Berge): extend the
/// transversals that miss the new edge by each of its vertices, then prune
/// non-minimal candidates. Canonical output order (cardinality, then
/// lexicographic). Throws PrereqError on a hypergraph with zero hyperedges.
std::vector<Strategy> minimal_transversals(const Hypergraph& h, Exec exec = Exec::parallel);

/// Independent oracle: scan all 2^|V| vertex subsets. Only for |V| <= 20;
/// throws PrereqError("oracle too large") above that. Same result contract as
/// minimal_transversals.
std::vector<Strategy> minimal_transversals_bruteforce(const Hypergraph& h,
                                                      Exec exec = Exec::parallel);

}  // namespace sproute
