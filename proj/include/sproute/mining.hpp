#pragma once

#include <string>
#include <vector>

#include "sproute/dataset.hpp"
#include "sproute/util.hpp"

namespace sproute {

/// A mined community: a closed pattern together with the exact set of
/// transactions containing it. Measures are filled in by select_clusters;
/// frequent_closed_itemsets leaves them at 0.
struct Cluster {
    std::vector<std::string> pattern;  // sorted item ids, non-empty
    std::vector<std::string> support;  // sorted transaction ids, non-empty
    double homogeneity = 0.0;
    double concentration = 0.0;
    double interestingness = 0.0;
};

struct MiningParams {
    double minfr = 0.2;  // frequency threshold in (0, 1]
    int m_overlap = 1;   // minimal number of new transactions per selected cluster
};

/// Absolute support threshold: ceiling(minfr * n), guarded against the usual
/// floating-point drift (0.2 * 10 must give 2, not 3).
std::size_t support_threshold(double minfr, std::size_t n_transactions);

/// Every non-empty closed pattern with support >= ceiling(minfr * n), each
/// with its exact support set. Output sorted by pattern (item-wise
/// lexicographic). Empty dataset yields an empty result.
std::vector<Cluster> frequent_closed_itemsets(const TransactionDataset& ds, double minfr,
                                              Exec exec = Exec::parallel);

/// (|pattern| * |support|) / sum of supporting transactions' sizes; in (0,1].
double homogeneity(const Cluster& c, const TransactionDataset& ds);

/// Mean over pattern items of |support| / freq(item); in (0,1].
double concentration(const Cluster& c, const TransactionDataset& ds);

/// Greedy interestingness-ranked selection with the m_overlap rule: after the
/// first pick, a candidate qualifies only if its support contains at least
/// m_overlap transactions not yet classified by earlier picks. Ties break on
/// fewer already-classified transactions, then lexicographic pattern.
/// Returns clusters in selection order with measures set.
std::vector<Cluster> select_clusters(const TransactionDataset& ds, const MiningParams& params,
                                     Exec exec = Exec::parallel);

}  // namespace sproute
