// Compares the serial reference kernels with their OpenMP counterparts.

#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sproute/hypergraph.hpp"
#include "sproute/mining.hpp"
#include "sproute/sim.hpp"

using namespace sproute;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

template <typename F>
double time_of(F&& f) {
    double t0 = now();
    f();
    return now() - t0;
}

Hypergraph random_hypergraph(std::mt19937_64& rng, int nv, int ne, int edge_size) {
    std::vector<std::vector<std::string>> edges;
    for (int e = 0; e < ne; ++e) {
        std::set<std::string> members;
        while (static_cast<int>(members.size()) < edge_size) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "v%02d", static_cast<int>(rng() % nv));
            members.insert(buf);
        }
        edges.emplace_back(members.begin(), members.end());
    }
    return Hypergraph::from_edges(edges);
}

TransactionDataset random_dataset(std::mt19937_64& rng, int n_tx, int n_items) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (int t = 0; t < n_tx; ++t) {
        std::vector<std::string> items;
        for (int i = 0; i < n_items; ++i)
            if (rng() % 100 < 30) items.push_back("w" + std::to_string(i));
        if (items.empty()) items.push_back("w0");
        rows.emplace_back("sp" + std::to_string(t), std::move(items));
    }
    return TransactionDataset::from_rows(std::move(rows));
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n", name, serial,
                parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n");
#endif

    {
        std::mt19937_64 rng(42);
        auto h = random_hypergraph(rng, 20, 40, 5);
        std::vector<Strategy> a, b;
        double s = time_of([&] { a = minimal_transversals_bruteforce(h, Exec::serial); });
        double p = time_of([&] { b = minimal_transversals_bruteforce(h, Exec::parallel); });
        report("bruteforce transversals", s, p);
        if (a != b) std::printf("  MISMATCH!\n");
    }
    {
        std::mt19937_64 rng(43);
        auto h = random_hypergraph(rng, 34, 20, 4);
        std::vector<Strategy> a, b;
        double s = time_of([&] { a = minimal_transversals(h, Exec::serial); });
        double p = time_of([&] { b = minimal_transversals(h, Exec::parallel); });
        report("incremental transversals", s, p);
        if (a != b) std::printf("  MISMATCH!\n");
    }
    {
        std::mt19937_64 rng(44);
        auto ds = random_dataset(rng, 400, 100);
        std::vector<Cluster> a, b;
        double s = time_of([&] { a = frequent_closed_itemsets(ds, 0.04, Exec::serial); });
        double p = time_of([&] { b = frequent_closed_itemsets(ds, 0.04, Exec::parallel); });
        std::printf("  (%zu closed patterns)\n", a.size());
        report("closed itemset mining", s, p);
        if (a.size() != b.size()) std::printf("  MISMATCH!\n");
    }
    {
        NetworkGenParams params;
        params.n_peers = 3000;
        params.n_superpeers = 30;
        auto net = build_network(params, 7);
        Workload a, b;
        double s = time_of(
            [&] { a = generate_workload(net, 400, 0.0, 7, 0.5, 8, Exec::serial); });
        double p = time_of(
            [&] { b = generate_workload(net, 400, 0.0, 7, 0.5, 8, Exec::parallel); });
        report("workload ground truth", s, p);
        if (a.ground_truth != b.ground_truth) std::printf("  MISMATCH!\n");
    }
    return 0;
}
