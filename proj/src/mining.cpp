#include "sproute/mining.hpp"

#include <cmath>

namespace sproute {
namespace {

struct Closed {
    Bitset pattern;  // over item indices
    Bitset tids;     // over transaction indices
};

// Closure of a tidset: intersection of its transactions' item sets.
Bitset closure_of(const TransactionDataset& ds, const Bitset& tids) {
    auto idx = tids.indices();
    Bitset acc = ds.row_bits(idx.front());
    for (std::size_t k = 1; k < idx.size(); ++k) acc &= ds.row_bits(idx[k]);
    return acc;
}

// Close-by-one extension: grow the current closed pattern by item j, close,
// and recurse. The canonicity test (closure adds no item below j outside the
// current pattern) guarantees each closed set is emitted exactly once.
void expand(const TransactionDataset& ds, const Bitset& pattern, const Bitset& tids,
            std::size_t next_item, std::size_t theta, std::vector<Closed>& out) {
    const std::size_t n_items = ds.item_universe().size();
    for (std::size_t j = next_item; j < n_items; ++j) {
        if (pattern.test(j)) continue;
        Bitset new_tids = tids & ds.item_bits(j);
        if (new_tids.count() < theta) continue;
        Bitset new_pattern = closure_of(ds, new_tids);
        bool canonical = true;
        for (std::size_t k = 0; k < j && canonical; ++k)
            if (new_pattern.test(k) && !pattern.test(k)) canonical = false;
        if (!canonical) continue;
        out.push_back({new_pattern, new_tids});
        expand(ds, new_pattern, new_tids, j + 1, theta, out);
    }
}

bool pattern_less(const Closed& a, const Closed& b) {
    return a.pattern.indices() < b.pattern.indices();
}

Cluster to_cluster(const TransactionDataset& ds, const Closed& c) {
    Cluster out;
    for (auto i : c.pattern.indices()) out.pattern.push_back(ds.item_name(i));
    for (auto t : c.tids.indices()) out.support.push_back(ds.transaction_id(t));
    std::sort(out.support.begin(), out.support.end());
    return out;
}

}  // namespace

std::size_t support_threshold(double minfr, std::size_t n_transactions) {
    double raw = minfr * static_cast<double>(n_transactions);
    auto theta = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return theta < 1 ? 1 : theta;
}

std::vector<Cluster> frequent_closed_itemsets(const TransactionDataset& ds, double minfr,
                                              Exec exec) {
    if (minfr <= 0.0 || minfr > 1.0) throw ConfigError("minfr", "must be in (0, 1]");
    const std::size_t n = ds.transaction_count();
    if (n == 0) return {};
    const std::size_t theta = support_threshold(minfr, n);
    const std::size_t n_items = ds.item_universe().size();

    Bitset all(n);
    for (std::size_t t = 0; t < n; ++t) all.set(t);
    Bitset root = closure_of(ds, all);

    std::vector<Closed> found;
    if (root.any() && n >= theta) found.push_back({root, all});

    // The root-level branches are independent; each explores the closed sets
    // whose smallest new item is j.
    std::vector<std::vector<Closed>> branch(n_items);
    auto run_branch = [&](std::size_t j) {
        if (root.test(j)) return;
        Bitset new_tids = all & ds.item_bits(j);
        if (new_tids.count() < theta) return;
        Bitset new_pattern = closure_of(ds, new_tids);
        for (std::size_t k = 0; k < j; ++k)
            if (new_pattern.test(k) && !root.test(k)) return;
        branch[j].push_back({new_pattern, new_tids});
        expand(ds, new_pattern, new_tids, j + 1, theta, branch[j]);
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t j = 0; j < n_items; ++j) run_branch(j);
    } else {
        for (std::size_t j = 0; j < n_items; ++j) run_branch(j);
    }
    for (auto& b : branch)
        for (auto& c : b) found.push_back(std::move(c));

    std::sort(found.begin(), found.end(), pattern_less);

    std::vector<Cluster> out;
    out.reserve(found.size());
    for (const auto& c : found) out.push_back(to_cluster(ds, c));
    return out;
}

double homogeneity(const Cluster& c, const TransactionDataset& ds) {
    std::size_t total_items = 0;
    for (const auto& tid : c.support) {
        std::size_t t = ds.transaction_index(tid);
        total_items += ds.transactions()[t].items.size();
    }
    return static_cast<double>(c.pattern.size() * c.support.size()) /
           static_cast<double>(total_items);
}

double concentration(const Cluster& c, const TransactionDataset& ds) {
    double acc = 0.0;
    for (const auto& item : c.pattern) {
        std::size_t i = ds.item_index(item);
        acc += static_cast<double>(c.support.size()) /
               static_cast<double>(ds.item_bits(i).count());
    }
    return acc / static_cast<double>(c.pattern.size());
}

std::vector<Cluster> select_clusters(const TransactionDataset& ds, const MiningParams& params,
                                     Exec exec) {
    if (params.m_overlap < 1) throw ConfigError("m_overlap", "must be >= 1");
    auto candidates = frequent_closed_itemsets(ds, params.minfr, exec);
    for (auto& c : candidates) {
        c.homogeneity = homogeneity(c, ds);
        c.concentration = concentration(c, ds);
        c.interestingness = (c.homogeneity + c.concentration) / 2.0;
    }

    const std::size_t n = ds.transaction_count();
    Bitset classified(n);
    std::vector<bool> taken(candidates.size(), false);
    std::vector<Bitset> supp_bits;
    supp_bits.reserve(candidates.size());
    for (const auto& c : candidates) {
        Bitset b(n);
        for (const auto& tid : c.support) b.set(ds.transaction_index(tid));
        supp_bits.push_back(std::move(b));
    }

    std::vector<Cluster> selected;
    while (classified.count() < n) {
        std::size_t best = candidates.size();
        std::size_t best_old = 0;
        const std::size_t m = static_cast<std::size_t>(params.m_overlap);
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (taken[i]) continue;
            std::size_t old_count = (supp_bits[i] & classified).count();
            std::size_t new_count = candidates[i].support.size() - old_count;
            bool eligible = selected.empty() ? true : new_count >= m;
            if (!eligible) continue;
            if (best == candidates.size() ||
                candidates[i].interestingness > candidates[best].interestingness ||
                (candidates[i].interestingness == candidates[best].interestingness &&
                 old_count < best_old)) {
                // candidates are pre-sorted by pattern, so equal (score, old)
                // keeps the lexicographically smaller pattern
                best = i;
                best_old = old_count;
            }
        }
        if (best == candidates.size()) break;
        taken[best] = true;
        classified |= supp_bits[best];
        selected.push_back(candidates[best]);
    }
    return selected;
}

}  // namespace sproute
