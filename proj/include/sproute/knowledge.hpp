#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sproute/util.hpp"

namespace sproute {

/// One processed query: its component set and the super-peers that turned out
/// to hold relevant peers for it.
struct QueryLogRecord {
    std::vector<std::string> components;   // non-empty, sorted
    std::vector<std::string> superpeers;   // may be empty, sorted
};

/// The knowledge super-peer index: a decision tree over item-presence
/// features whose leaves carry super-peer label sets. Splits maximize the
/// summed per-label information gain (binary relevance per super-peer, fused
/// into a single tree). Immutable once trained.
class DecisionTree {
  public:
    struct Node {
        int item = -1;  // feature index; -1 marks a leaf
        int yes = -1;
        int no = -1;
        std::vector<int> labels;  // leaf payload: label indices
    };

    /// Predicted super-peers for a query component set; sorted, possibly
    /// empty. Components never seen in training simply match no test.
    std::vector<std::string> predict(const std::vector<std::string>& components) const;

    int depth() const { return depth_; }
    bool trained() const { return !nodes_.empty(); }

    /// Structural dump used by the determinism tests.
    std::string describe() const;

    friend DecisionTree train(const std::vector<QueryLogRecord>& log, int max_depth,
                              int min_leaf);

  private:
    std::vector<Node> nodes_;          // nodes_[0] is the root
    std::vector<std::string> items_;   // feature vocabulary, sorted
    std::vector<std::string> labels_;  // super-peer vocabulary, sorted
    int depth_ = 0;
};

/// Top-down induction: at each node pick the item whose presence test yields
/// the highest total information gain across the per-super-peer relevance
/// labels; ties break toward the lexicographically smaller item. A node
/// becomes a leaf when pure, at max_depth, below min_leaf records, or when no
/// split has positive gain. Throws PrereqError("no training data") on an
/// empty log.
DecisionTree train(const std::vector<QueryLogRecord>& log, int max_depth, int min_leaf);

/// Line format: `<comp> <comp> ... -> <sp> <sp> ...` (sp list may be empty).
std::vector<QueryLogRecord> parse_query_log(std::istream& in);
std::string format_query_log(const std::vector<QueryLogRecord>& log);

}  // namespace sproute
