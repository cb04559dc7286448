#include "bdt/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "bdt/errors.hpp"

namespace bdt {

namespace {

// Rebuild `raw` in breadth-first order starting at `root`, dropping
// unreachable nodes. source[new_id] = old id.
TreeEdit canonicalize(const std::vector<TreeNode>& raw, int root) {
    std::vector<int> order;
    order.reserve(raw.size());
    std::vector<int> new_id(raw.size(), -1);
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int id = q.front();
        q.pop();
        new_id[id] = int(order.size());
        order.push_back(id);
        if (raw[id].left >= 0) {
            q.push(raw[id].left);
            q.push(raw[id].right);
        }
    }
    std::vector<TreeNode> out(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const TreeNode& src = raw[order[i]];
        TreeNode n = src;
        n.parent = src.parent < 0 ? -1 : new_id[src.parent];
        n.left = src.left < 0 ? -1 : new_id[src.left];
        n.right = src.right < 0 ? -1 : new_id[src.right];
        out[i] = std::move(n);
    }
    out[0].parent = -1;
    TreeEdit e;
    e.tree = DecisionTree::from_nodes(std::move(out));
    e.source = std::move(order);
    return e;
}

} // namespace

DecisionTree DecisionTree::single_leaf(std::vector<int> counts) {
    DecisionTree t;
    TreeNode n;
    n.counts = std::move(counts);
    t.nodes_.push_back(std::move(n));
    return t;
}

DecisionTree DecisionTree::from_nodes(std::vector<TreeNode> nodes, int root) {
    DecisionTree t;
    if (root == 0) {
        t.nodes_ = std::move(nodes);
    } else {
        t = canonicalize(nodes, root).tree;
    }
    return t;
}

int DecisionTree::leaf_count() const {
    int k = 0;
    for (const auto& n : nodes_) k += n.terminal();
    return k;
}

std::vector<int> DecisionTree::terminal_ids() const {
    std::vector<int> ids;
    for (int i = 0; i < node_count(); ++i)
        if (nodes_[i].terminal()) ids.push_back(i);
    return ids;
}

std::vector<int> DecisionTree::internal_ids() const {
    std::vector<int> ids;
    for (int i = 0; i < node_count(); ++i)
        if (!nodes_[i].terminal()) ids.push_back(i);
    return ids;
}

std::vector<int> DecisionTree::both_terminal_split_ids() const {
    std::vector<int> ids;
    for (int i = 0; i < node_count(); ++i) {
        const auto& n = nodes_[i];
        if (!n.terminal() && nodes_[n.left].terminal() && nodes_[n.right].terminal())
            ids.push_back(i);
    }
    return ids;
}

int DecisionTree::depth_of(int id) const {
    int d = 0;
    while (nodes_[id].parent >= 0) {
        id = nodes_[id].parent;
        ++d;
    }
    return d;
}

int DecisionTree::rows_in_subtree(int id) const {
    const auto& n = nodes_[id];
    if (n.terminal()) return std::accumulate(n.counts.begin(), n.counts.end(), 0);
    return rows_in_subtree(n.left) + rows_in_subtree(n.right);
}

int DecisionTree::route(std::span<const double> x) const {
    int id = 0;
    while (!nodes_[id].terminal()) {
        const SplitRule& r = nodes_[id].rule;
        id = x[r.feature] < r.threshold ? nodes_[id].left : nodes_[id].right;
    }
    return id;
}

TreeEdit DecisionTree::split_leaf(int leaf_id, SplitRule rule) const {
    if (!nodes_[leaf_id].terminal())
        throw StructuralError("split_leaf target is not a terminal node");
    std::vector<TreeNode> raw = nodes_;
    int l = int(raw.size());
    int r = l + 1;
    TreeNode child;
    child.parent = leaf_id;
    raw.push_back(child);
    raw.push_back(child);
    raw[leaf_id].left = l;
    raw[leaf_id].right = r;
    raw[leaf_id].rule = rule;
    raw[leaf_id].counts.clear();
    TreeEdit e = canonicalize(raw, 0);
    for (std::size_t i = 0; i < e.source.size(); ++i)
        if (e.source[i] >= l) e.source[i] = -1; // fresh children
    return e;
}

TreeEdit DecisionTree::collapse(int internal_id) const {
    if (nodes_[internal_id].terminal())
        throw StructuralError("collapse target is not an internal node");
    std::vector<int> merged;
    // sum counts over the subtree's terminals
    std::vector<int> stack = {internal_id};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        const auto& n = nodes_[id];
        if (n.terminal()) {
            if (merged.empty()) merged.assign(n.counts.size(), 0);
            for (std::size_t c = 0; c < n.counts.size(); ++c) merged[c] += n.counts[c];
        } else {
            stack.push_back(n.left);
            stack.push_back(n.right);
        }
    }
    std::vector<TreeNode> raw = nodes_;
    raw[internal_id].left = -1;
    raw[internal_id].right = -1;
    raw[internal_id].rule = {};
    raw[internal_id].counts = std::move(merged);
    return canonicalize(raw, 0);
}

DecisionTree DecisionTree::replace_rule(int internal_id, SplitRule rule) const {
    if (nodes_[internal_id].terminal())
        throw StructuralError("replace_rule target is not an internal node");
    DecisionTree t = *this;
    t.nodes_[internal_id].rule = rule;
    return t;
}

void DecisionTree::set_counts(int id, std::vector<int> counts) {
    nodes_[id].counts = std::move(counts);
}

void DecisionTree::check_structure(int feature_count) const {
    if (nodes_.empty()) throw StructuralError("tree has no nodes");
    if (nodes_[0].parent != -1) throw StructuralError("root has a parent");
    for (int i = 0; i < node_count(); ++i) {
        const auto& n = nodes_[i];
        if ((n.left < 0) != (n.right < 0))
            throw StructuralError("node has exactly one child");
        if (!n.terminal()) {
            if (n.left >= node_count() || n.right >= node_count())
                throw StructuralError("child index out of range");
            if (nodes_[n.left].parent != i || nodes_[n.right].parent != i)
                throw StructuralError("child parent link broken");
            if (n.rule.feature < 0 || n.rule.feature >= feature_count)
                throw StructuralError("split feature index out of range");
        }
    }
}

std::vector<std::vector<int>> partition(const DecisionTree& tree,
                                        const Dataset& data) {
    tree.check_structure(data.cols());
    std::vector<std::vector<int>> out(tree.node_count());
    for (int r = 0; r < data.rows(); ++r)
        out[tree.route(data.row(r))].push_back(r);
    return out;
}

std::vector<std::vector<int>> node_rows(const DecisionTree& tree,
                                        const Dataset& data) {
    tree.check_structure(data.cols());
    std::vector<std::vector<int>> out(tree.node_count());
    for (int r = 0; r < data.rows(); ++r) {
        int id = 0;
        out[0].push_back(r);
        while (!tree.node(id).terminal()) {
            const SplitRule& rule = tree.node(id).rule;
            id = data.at(r, rule.feature) < rule.threshold ? tree.node(id).left
                                                           : tree.node(id).right;
            out[id].push_back(r);
        }
    }
    return out;
}

RefitResult refit(const DecisionTree& tree, const Dataset& data, int p_min) {
    if (!data.labeled()) throw InputError("refit needs labeled data");
    RefitResult res;
    res.tree = tree;
    const int C = data.class_count();
    std::vector<std::vector<int>> counts(tree.node_count(),
                                         std::vector<int>(C, 0));
    for (int r = 0; r < data.rows(); ++r)
        counts[tree.route(data.row(r))][data.label(r)]++;
    for (int i = 0; i < tree.node_count(); ++i) {
        if (!tree.node(i).terminal()) continue;
        int total = std::accumulate(counts[i].begin(), counts[i].end(), 0);
        if (total < p_min) res.undersized++;
        res.tree.set_counts(i, std::move(counts[i]));
    }
    return res;
}

std::vector<double> predict_tree(const DecisionTree& tree,
                                 std::span<const double> x, double alpha) {
    for (double v : x)
        if (!std::isfinite(v)) throw InputError("non-finite input vector");
    const TreeNode& leaf = tree.node(tree.route(x));
    if (leaf.counts.empty())
        throw StateError("tree is not fitted: terminal node has no counts");
    const int C = int(leaf.counts.size());
    int total = std::accumulate(leaf.counts.begin(), leaf.counts.end(), 0);
    std::vector<double> p(C);
    for (int c = 0; c < C; ++c)
        p[c] = (leaf.counts[c] + alpha) / (total + C * alpha);
    return p;
}

int predict_tree_class(const DecisionTree& tree, std::span<const double> x) {
    const TreeNode& leaf = tree.node(tree.route(x));
    if (leaf.counts.empty())
        throw StateError("tree is not fitted: terminal node has no counts");
    int best = 0;
    for (int c = 1; c < int(leaf.counts.size()); ++c)
        if (leaf.counts[c] > leaf.counts[best]) best = c;
    return best;
}

} // namespace bdt
