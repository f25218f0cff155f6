#include "sproute/config.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace sproute {
namespace {

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "not a number: '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        int i = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return i;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    net.validate();
    if (sim.mining.minfr <= 0.0 || sim.mining.minfr > 1.0)
        throw ConfigError("minfr", "must be in (0,1]");
    if (sim.mining.m_overlap < 1) throw ConfigError("m_overlap", "must be >= 1");
    if (sim.eps_acc < 0.0 || sim.eps_acc > 1.0) throw ConfigError("eps_acc", "must be in [0,1]");
    if (sim.ttl < 1) throw ConfigError("ttl", "must be >= 1");
    if (sim.max_depth < 1) throw ConfigError("max_depth", "must be >= 1");
    if (sim.min_leaf < 1) throw ConfigError("min_leaf", "must be >= 1");
    if (sim.bootstrap_frac < 0.0 || sim.bootstrap_frac >= 1.0)
        throw ConfigError("bootstrap_frac", "must be in [0,1)");
    if (sim.retrain_every < 1) throw ConfigError("retrain_every", "must be >= 1");
    if (n_queries < 1) throw ConfigError("n_queries", "must be >= 1");
    if (noise < 0.0 || noise > 1.0) throw ConfigError("noise", "must be in [0,1]");
    if (seeds.empty()) throw ConfigError("seeds", "need at least one seed");
    if (policies.empty()) throw ConfigError("policies", "need at least one policy");
    if (output.empty()) throw ConfigError("output", "must not be empty");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
        auto key_tokens = split_ws(line.substr(0, eq));
        if (key_tokens.size() != 1) throw ParseError("malformed key", line_no);
        const std::string& key = key_tokens[0];
        std::string value = line.substr(eq + 1);
        std::size_t b = value.find_first_not_of(" \t");
        std::size_t e = value.find_last_not_of(" \t");
        value = (b == std::string::npos) ? "" : value.substr(b, e - b + 1);
        if (value.empty()) throw ParseError("empty value for '" + key + "'", line_no);

        if (key == "n_peers") cfg.net.n_peers = to_int(key, value);
        else if (key == "n_superpeers") cfg.net.n_superpeers = to_int(key, value);
        else if (key == "n_ksps") cfg.net.n_ksps = to_int(key, value);
        else if (key == "items_per_theme") cfg.net.items_per_theme = to_int(key, value);
        else if (key == "shared_pool") cfg.net.shared_pool = to_int(key, value);
        else if (key == "shared_frac") cfg.net.shared_frac = to_double(key, value);
        else if (key == "cross_frac") cfg.net.cross_frac = to_double(key, value);
        else if (key == "expertise_min") cfg.net.expertise_min = to_int(key, value);
        else if (key == "expertise_max") cfg.net.expertise_max = to_int(key, value);
        else if (key == "sp_extra_links") cfg.net.sp_extra_links = to_int(key, value);
        else if (key == "minfr") cfg.sim.mining.minfr = to_double(key, value);
        else if (key == "m_overlap") cfg.sim.mining.m_overlap = to_int(key, value);
        else if (key == "eps_acc") {
            cfg.sim.eps_acc = to_double(key, value);
            cfg.net.eps_acc = cfg.sim.eps_acc;
        } else if (key == "ttl") cfg.sim.ttl = to_int(key, value);
        else if (key == "max_depth") cfg.sim.max_depth = to_int(key, value);
        else if (key == "min_leaf") cfg.sim.min_leaf = to_int(key, value);
        else if (key == "bootstrap_frac") cfg.sim.bootstrap_frac = to_double(key, value);
        else if (key == "retrain_every") cfg.sim.retrain_every = to_int(key, value);
        else if (key == "n_queries") cfg.n_queries = to_int(key, value);
        else if (key == "noise") cfg.noise = to_double(key, value);
        else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& s : split_list(value))
                cfg.seeds.push_back(static_cast<std::uint64_t>(to_int(key, s)));
        } else if (key == "policies") {
            cfg.policies.clear();
            for (const auto& p : split_list(value)) cfg.policies.push_back(policy_from_name(p));
        } else if (key == "output") cfg.output = value;
        else throw ConfigError(key, "unknown key");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_config(in);
}

std::string run_experiment(const ExperimentConfig& cfg, Exec exec) {
    cfg.validate();
    const std::size_t n_seeds = cfg.seeds.size();
    // seed -> policy -> row; runs share nothing mutable across seeds
    std::vector<std::vector<MetricsReport>> rows(n_seeds);
    std::vector<std::exception_ptr> errors(n_seeds);

    auto run_seed = [&](std::size_t si) {
        try {
            std::uint64_t seed = cfg.seeds[si];
            SimConfig sim = cfg.sim;
            sim.exec = Exec::serial;  // inner kernels stay serial under seed fan-out
            Network net = build_network(cfg.net, seed);
            Workload wl = generate_workload(net, cfg.n_queries, cfg.noise, seed, sim.eps_acc,
                                            sim.ttl, sim.exec);
            for (Policy p : cfg.policies) {
                MetricsReport r = run(net, p, wl, sim);
                r.seed = seed;
                rows[si].push_back(std::move(r));
            }
        } catch (...) {
            errors[si] = std::current_exception();  // never leaks out of the omp region
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t si = 0; si < n_seeds; ++si) run_seed(si);
    } else {
        for (std::size_t si = 0; si < n_seeds; ++si) run_seed(si);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    // deterministic report order: by policy name, then seed
    std::vector<MetricsReport> flat;
    for (auto& seed_rows : rows)
        for (auto& r : seed_rows) flat.push_back(std::move(r));
    std::stable_sort(flat.begin(), flat.end(), [](const MetricsReport& a, const MetricsReport& b) {
        if (a.policy != b.policy) return a.policy < b.policy;
        return a.seed < b.seed;
    });

    std::ostringstream out;
    out << metrics_csv_header() << "\n";
    for (const auto& r : flat) out << metrics_csv_row(r) << "\n";
    return out.str();
}

}  // namespace sproute
