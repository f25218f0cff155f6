#include "sproute/knowledge.hpp"

#include <cmath>
#include <istream>
#include <set>
#include <sstream>

namespace sproute {
namespace {

double entropy(std::size_t pos, std::size_t n) {
    if (n == 0 || pos == 0 || pos == n) return 0.0;
    double p = static_cast<double>(pos) / static_cast<double>(n);
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

struct Builder {
    const std::vector<Bitset>& features;  // per record, over item indices
    const std::vector<Bitset>& labels;    // per record, over label indices
    std::size_t n_items;
    std::size_t n_labels;
    int max_depth;
    int min_leaf;
    std::vector<DecisionTree::Node> nodes;
    int max_seen_depth = 0;

    // Summed binary-relevance information gain of splitting `records` on item j.
    double gain(const std::vector<std::size_t>& records, std::size_t j) const {
        std::vector<std::size_t> yes, no;
        for (auto r : records) (features[r].test(j) ? yes : no).push_back(r);
        if (yes.empty() || no.empty()) return 0.0;
        double total = 0.0;
        const double n = static_cast<double>(records.size());
        for (std::size_t l = 0; l < n_labels; ++l) {
            std::size_t p = 0, py = 0, pn = 0;
            for (auto r : records) p += labels[r].test(l);
            for (auto r : yes) py += labels[r].test(l);
            for (auto r : no) pn += labels[r].test(l);
            total += entropy(p, records.size()) -
                     (static_cast<double>(yes.size()) / n) * entropy(py, yes.size()) -
                     (static_cast<double>(no.size()) / n) * entropy(pn, no.size());
        }
        return total;
    }

    bool pure(const std::vector<std::size_t>& records) const {
        for (std::size_t i = 1; i < records.size(); ++i)
            if (!(labels[records[i]] == labels[records[0]])) return false;
        return true;
    }

    std::vector<int> majority_labels(const std::vector<std::size_t>& records) const {
        std::vector<int> out;
        for (std::size_t l = 0; l < n_labels; ++l) {
            std::size_t c = 0;
            for (auto r : records) c += labels[r].test(l);
            if (2 * c > records.size()) out.push_back(static_cast<int>(l));
        }
        return out;
    }

    int build(const std::vector<std::size_t>& records, const Bitset& used, int depth) {
        max_seen_depth = std::max(max_seen_depth, depth);
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();

        bool stop = depth >= max_depth || records.size() < static_cast<std::size_t>(min_leaf) ||
                    pure(records);
        std::size_t best_item = n_items;
        if (!stop) {
            double best_gain = 0.0;
            for (std::size_t j = 0; j < n_items; ++j) {
                if (used.test(j)) continue;
                double g = gain(records, j);
                if (g > best_gain + 1e-12) {  // strict improvement; ties keep smaller item
                    best_gain = g;
                    best_item = j;
                }
            }
            if (best_item == n_items) {
                // No positive gain but the node is impure: take the smallest
                // untested feature that separates the records at all (gain is
                // 0 everywhere, so 0 is still the maximum). Without this an
                // xor-shaped label function would never be separated.
                for (std::size_t j = 0; j < n_items && best_item == n_items; ++j) {
                    if (used.test(j)) continue;
                    bool any_yes = false, any_no = false;
                    for (auto r : records) (features[r].test(j) ? any_yes : any_no) = true;
                    if (any_yes && any_no) best_item = j;
                }
            }
            if (best_item == n_items) stop = true;
        }

        if (stop) {
            nodes[id].labels = majority_labels(records);
            return id;
        }

        std::vector<std::size_t> yes, no;
        for (auto r : records) (features[r].test(best_item) ? yes : no).push_back(r);
        Bitset used2 = used;
        used2.set(best_item);
        nodes[id].item = static_cast<int>(best_item);
        int y = build(yes, used2, depth + 1);
        int n = build(no, used2, depth + 1);
        nodes[id].yes = y;
        nodes[id].no = n;
        return id;
    }
};

}  // namespace

DecisionTree train(const std::vector<QueryLogRecord>& log, int max_depth, int min_leaf) {
    if (log.empty()) throw PrereqError("no training data");
    if (max_depth < 1) throw ConfigError("max_depth", "must be >= 1");
    if (min_leaf < 1) throw ConfigError("min_leaf", "must be >= 1");

    std::set<std::string> item_set, label_set;
    for (const auto& r : log) {
        if (r.components.empty()) throw ParseError("query log record with no components");
        item_set.insert(r.components.begin(), r.components.end());
        label_set.insert(r.superpeers.begin(), r.superpeers.end());
    }

    DecisionTree t;
    t.items_.assign(item_set.begin(), item_set.end());
    t.labels_.assign(label_set.begin(), label_set.end());

    auto item_index = [&](const std::string& s) {
        return std::lower_bound(t.items_.begin(), t.items_.end(), s) - t.items_.begin();
    };
    auto label_index = [&](const std::string& s) {
        return std::lower_bound(t.labels_.begin(), t.labels_.end(), s) - t.labels_.begin();
    };

    std::vector<Bitset> features(log.size(), Bitset(t.items_.size()));
    std::vector<Bitset> labels(log.size(), Bitset(t.labels_.size()));
    for (std::size_t r = 0; r < log.size(); ++r) {
        for (const auto& c : log[r].components) features[r].set(item_index(c));
        for (const auto& s : log[r].superpeers) labels[r].set(label_index(s));
    }

    Builder b{features, labels, t.items_.size(), t.labels_.size(), max_depth, min_leaf, {}, 0};
    std::vector<std::size_t> all(log.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    b.build(all, Bitset(t.items_.size()), 0);
    t.nodes_ = std::move(b.nodes);
    t.depth_ = b.max_seen_depth;
    return t;
}

std::vector<std::string> DecisionTree::predict(const std::vector<std::string>& components) const {
    if (nodes_.empty()) throw PrereqError("decision tree not trained");
    std::set<std::string> comp(components.begin(), components.end());
    const Node* n = &nodes_[0];
    while (n->item >= 0) {
        bool present = comp.count(items_[static_cast<std::size_t>(n->item)]) > 0;
        n = &nodes_[static_cast<std::size_t>(present ? n->yes : n->no)];
    }
    std::vector<std::string> out;
    for (int l : n->labels) out.push_back(labels_[static_cast<std::size_t>(l)]);
    return out;
}

std::string DecisionTree::describe() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        if (n.item < 0) {
            out << i << " leaf";
            for (int l : n.labels) out << " " << labels_[static_cast<std::size_t>(l)];
            out << "\n";
        } else {
            out << i << " test " << items_[static_cast<std::size_t>(n.item)] << " yes=" << n.yes
                << " no=" << n.no << "\n";
        }
    }
    return out.str();
}

std::vector<QueryLogRecord> parse_query_log(std::istream& in) {
    std::vector<QueryLogRecord> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t arrow = line.find("->");
        if (arrow == std::string::npos)
            throw ParseError("expected '<comp> ... -> <sp> ...'", line_no);
        QueryLogRecord r;
        r.components = sorted_unique(split_ws(line.substr(0, arrow)));
        r.superpeers = sorted_unique(split_ws(line.substr(arrow + 2)));
        if (r.components.empty()) throw ParseError("record with no components", line_no);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_query_log(const std::vector<QueryLogRecord>& log) {
    std::ostringstream out;
    for (const auto& r : log)
        out << join(r.components, " ") << " -> " << join(r.superpeers, " ") << "\n";
    return out.str();
}

}  // namespace sproute
