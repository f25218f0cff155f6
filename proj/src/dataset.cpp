#include "sproute/dataset.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace sproute {

TransactionDataset TransactionDataset::from_rows(
    std::vector<std::pair<std::string, std::vector<std::string>>> rows) {
    TransactionDataset ds;
    std::set<std::string> seen;
    for (auto& [id, items] : rows) {
        if (id.empty()) throw ParseError("empty transaction id");
        if (!seen.insert(id).second) throw ParseError("duplicate transaction id '" + id + "'");
        auto uniq = sorted_unique(std::move(items));
        if (uniq.empty()) throw ParseError("empty transaction '" + id + "'");
        ds.transactions_.push_back({id, std::move(uniq)});
    }
    ds.build_index();
    return ds;
}

TransactionDataset TransactionDataset::parse(std::istream& in) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    std::string line;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("expected '<transaction-id>: <item> ...'", line_no);
        auto id_tokens = split_ws(line.substr(0, colon));
        if (id_tokens.size() != 1) throw ParseError("malformed transaction id", line_no);
        const std::string& id = id_tokens[0];
        if (!seen.insert(id).second)
            throw ParseError("duplicate transaction id '" + id + "'", line_no);
        auto items = split_ws(line.substr(colon + 1));
        if (items.empty()) throw ParseError("transaction '" + id + "' has no items", line_no);
        rows.emplace_back(id, std::move(items));
    }
    return from_rows(std::move(rows));
}

TransactionDataset TransactionDataset::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse(in);
}

std::string TransactionDataset::format() const {
    std::ostringstream out;
    for (const auto& t : transactions_) out << t.id << ": " << join(t.items, " ") << "\n";
    return out.str();
}

std::size_t TransactionDataset::item_index(const std::string& name) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), name);
    if (it == items_.end() || *it != name) return npos;
    return static_cast<std::size_t>(it - items_.begin());
}

std::size_t TransactionDataset::transaction_index(const std::string& id) const {
    for (std::size_t t = 0; t < transactions_.size(); ++t)
        if (transactions_[t].id == id) return t;
    return npos;
}

void TransactionDataset::build_index() {
    std::set<std::string> universe;
    for (const auto& t : transactions_) universe.insert(t.items.begin(), t.items.end());
    items_.assign(universe.begin(), universe.end());

    row_bits_.assign(transactions_.size(), Bitset(items_.size()));
    item_bits_.assign(items_.size(), Bitset(transactions_.size()));
    for (std::size_t t = 0; t < transactions_.size(); ++t) {
        for (const auto& it : transactions_[t].items) {
            std::size_t i = item_index(it);
            row_bits_[t].set(i);
            item_bits_[i].set(t);
        }
    }
}

}  // namespace sproute
