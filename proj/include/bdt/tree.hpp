#pragma once
#include <span>
#include <vector>

#include "bdt/dataset.hpp"

namespace bdt {

// A point x goes LEFT iff x[feature] < threshold, else RIGHT.
// Equality goes right.
struct SplitRule {
    int feature = -1;
    double threshold = 0.0;
};

// Node of a strictly binary tree. Terminal nodes (left < 0) carry per-class
// counts of the training rows routed to them; internal nodes carry a rule.
struct TreeNode {
    int parent = -1;
    int left = -1;
    int right = -1;
    SplitRule rule;
    std::vector<int> counts;
    bool terminal() const { return left < 0; }
};

// Structural edit result: `source[new_id]` is the node id in the source tree,
// or -1 for freshly created nodes. Lets callers carry per-node side data
// (row lists) across an edit without re-routing the whole dataset.
class DecisionTree;
struct TreeEdit {
    DecisionTree tree;
    std::vector<int> source;
};

// Strictly binary decision tree stored in canonical breadth-first order,
// root at index 0. Immutable; edits return new trees.
class DecisionTree {
public:
    DecisionTree() = default;

    static DecisionTree single_leaf(std::vector<int> counts);
    // from raw nodes (any order, root given); canonicalizes
    static DecisionTree from_nodes(std::vector<TreeNode> nodes, int root = 0);

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeNode& node(int id) const { return nodes_[id]; }
    bool empty() const { return nodes_.empty(); }
    int node_count() const { return int(nodes_.size()); }
    int leaf_count() const;
    int internal_count() const { return node_count() - leaf_count(); }

    std::vector<int> terminal_ids() const;
    std::vector<int> internal_ids() const;
    // internal nodes whose two children are both terminal
    std::vector<int> both_terminal_split_ids() const;

    // number of splits made above the node
    int depth_of(int id) const;
    // total training rows in the subtree rooted at id (sums leaf counts)
    int rows_in_subtree(int id) const;

    // leaf id reached by x
    int route(std::span<const double> x) const;

    // replace a terminal by a split with two fresh terminal children
    TreeEdit split_leaf(int leaf_id, SplitRule rule) const;
    // replace the subtree at an internal node by a terminal with the
    // subtree's summed counts
    TreeEdit collapse(int internal_id) const;
    // swap the rule of an internal node; structure and order unchanged
    DecisionTree replace_rule(int internal_id, SplitRule rule) const;

    void set_counts(int id, std::vector<int> counts);

    // throws StructuralError on malformed links or feature index >= m
    void check_structure(int feature_count) const;

private:
    std::vector<TreeNode> nodes_;
};

// Rows reaching each terminal node: result[id] is the list of row indices at
// terminal id, empty at internal nodes. Every row lands in exactly one leaf.
std::vector<std::vector<int>> partition(const DecisionTree&, const Dataset&);

// Rows reaching every node (internal ones included).
std::vector<std::vector<int>> node_rows(const DecisionTree&, const Dataset&);

struct RefitResult {
    DecisionTree tree;
    int undersized = 0; // terminals holding fewer than p_min rows
};

// Recompute terminal counts from the data; reports p_min violations.
RefitResult refit(const DecisionTree&, const Dataset&, int p_min);

// Posterior-mean class probabilities of the leaf reached by x:
// (n_tc + alpha) / (n_t + C * alpha). Empty leaves give the uniform vector.
std::vector<double> predict_tree(const DecisionTree&, std::span<const double> x,
                                 double alpha);

// argmax class of the leaf reached by x, ties to the lowest class index
int predict_tree_class(const DecisionTree&, std::span<const double> x);

} // namespace bdt
