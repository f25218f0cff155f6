#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sproute/util.hpp"

namespace sproute {

/// One transaction: an identifier plus a non-empty, sorted, duplicate-free
/// item list.
struct Transaction {
    std::string id;
    std::vector<std::string> items;
};

/// A transaction database over a string item universe. Construction validates
/// the invariants (unique ids, no empty transaction) and builds the index
/// structures the mining kernels work on: one item bitset per transaction and
/// one transaction bitset per item.
class TransactionDataset {
  public:
    TransactionDataset() = default;

    /// Rows keep their given order; items within a row are sorted/deduped.
    static TransactionDataset from_rows(
        std::vector<std::pair<std::string, std::vector<std::string>>> rows);

    /// Line format: `<transaction-id>: <item> <item> ...`. Blank lines and
    /// lines starting with `#` are skipped. Throws ParseError with the
    /// offending line number.
    static TransactionDataset parse(std::istream& in);
    static TransactionDataset parse_file(const std::string& path);

    std::string format() const;

    std::size_t transaction_count() const { return transactions_.size(); }
    const std::vector<Transaction>& transactions() const { return transactions_; }
    const std::vector<std::string>& item_universe() const { return items_; }

    /// Items of transaction t as a bitset over item indices.
    const Bitset& row_bits(std::size_t t) const { return row_bits_[t]; }
    /// Transactions containing item i as a bitset over transaction indices.
    const Bitset& item_bits(std::size_t i) const { return item_bits_[i]; }

    const std::string& item_name(std::size_t i) const { return items_[i]; }
    const std::string& transaction_id(std::size_t t) const { return transactions_[t].id; }

    /// Index of an item name in the sorted universe; npos when absent.
    std::size_t item_index(const std::string& name) const;
    std::size_t transaction_index(const std::string& id) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    void build_index();

    std::vector<Transaction> transactions_;
    std::vector<std::string> items_;  // sorted universe
    std::vector<Bitset> row_bits_;    // per transaction, over items
    std::vector<Bitset> item_bits_;   // per item, over transactions
};

}  // namespace sproute
