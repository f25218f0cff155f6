#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sproute/network.hpp"
#include "sproute/sim.hpp"

namespace sproute {

/// One experiment grid: network generation, mining, routing and workload
/// parameters plus the (policy, seed) matrix. Parsed from `key = value` text;
/// unknown keys are errors.
struct ExperimentConfig {
    NetworkGenParams net;
    SimConfig sim;
    int n_queries = 200;
    double noise = 0.0;
    std::vector<std::uint64_t> seeds = {1};
    std::vector<Policy> policies = {Policy::baseline, Policy::ksp, Policy::traversal};
    std::string output = "report.csv";

    void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// Runs the full (policy, seed) grid. Per seed the network and workload are
/// built once and shared across policies; seeds fan out in parallel. Rows are
/// ordered by (policy, seed). Returns the CSV text (header + rows).
std::string run_experiment(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

}  // namespace sproute
