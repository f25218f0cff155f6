#pragma once

// Test-only oracles, deliberately written along different routes than the
// library kernels they check.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "sproute/dataset.hpp"
#include "sproute/hypergraph.hpp"
#include "sproute/mining.hpp"

namespace sproute::testing {

// Enumerates every non-empty subset of the item universe, keeps it when it is
// frequent and closed. Only feasible for small universes (<= 16 items).
std::vector<Cluster> brute_force_closed_frequent(const TransactionDataset& ds, double minfr);

// Character-trigram Jaccard computed with std::set machinery.
double trigram_similarity_oracle(const std::string& a, const std::string& b);

// Exhaustive max-over-expertise / mean-over-subject evaluation.
double cap_oracle(const std::vector<std::string>& expertise,
                  const std::vector<std::string>& subject);

// Random small dataset for property tests: <= max_transactions transactions
// over <= max_items items, no empty transaction.
TransactionDataset random_dataset(std::mt19937_64& rng, int max_transactions, int max_items);

// Random hypergraph with n_vertices named "u00".., edge sizes in [1, max_edge].
Hypergraph random_hypergraph(std::mt19937_64& rng, int n_vertices, int n_edges, int max_edge);

}  // namespace sproute::testing
