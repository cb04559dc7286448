#include "bdt/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bdt/errors.hpp"

namespace bdt {

double leaf_log_marginal(std::span<const int> counts, double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
    const int C = int(counts.size());
    int total = 0;
    double sum = 0.0;
    for (int c : counts) {
        if (c < 0) throw InputError("negative class count");
        total += c;
        sum += std::lgamma(c + alpha) - std::lgamma(alpha);
    }
    return std::lgamma(C * alpha) - std::lgamma(total + C * alpha) + sum;
}

double log_marginal_from_counts(const DecisionTree& tree, double alpha) {
    double ll = 0.0;
    for (const auto& n : tree.nodes()) {
        if (!n.terminal()) continue;
        if (n.counts.empty())
            throw StateError("tree is not fitted: terminal node has no counts");
        ll += leaf_log_marginal(n.counts, alpha);
    }
    return ll;
}

double log_marginal_likelihood(const DecisionTree& tree, const Dataset& data,
                               double alpha) {
    int total = 0;
    for (const auto& n : tree.nodes())
        if (n.terminal())
            total += std::accumulate(n.counts.begin(), n.counts.end(), 0);
    if (total != data.rows())
        throw StateError("tree counts do not match the dataset: refit first");
    return log_marginal_from_counts(tree, alpha);
}

double chipman_split_probability(double gamma_split, double delta_split,
                                 int depth) {
    double p = gamma_split * std::pow(1.0 + depth, -delta_split);
    if (p > 1.0)
        throw ConfigError("chipman split probability exceeds 1 at depth " +
                          std::to_string(depth));
    return p;
}

namespace {

int distinct_value_count(const Dataset& data, const std::vector<int>& rows,
                         int feature) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (int r : rows) v.push_back(data.at(r, feature));
    std::sort(v.begin(), v.end());
    return int(std::unique(v.begin(), v.end()) - v.begin());
}

} // namespace

double log_tree_prior(const DecisionTree& tree, const PriorConfig& cfg,
                      const Dataset& data,
                      const std::vector<std::vector<int>>& rows_at_node) {
    cfg.validate();
    if (cfg.kind == PriorKind::chipman) {
        double lp = 0.0;
        for (int i = 0; i < tree.node_count(); ++i) {
            double ps = chipman_split_probability(cfg.gamma_split,
                                                  cfg.delta_split,
                                                  tree.depth_of(i));
            if (tree.node(i).terminal()) {
                if (ps >= 1.0) return -std::numeric_limits<double>::infinity();
                lp += std::log1p(-ps);
            } else {
                lp += std::log(ps);
            }
        }
        return lp;
    }
    // uniform over leaf counts, corrected by the number of ways each split
    // could have been drawn
    const double log_m = std::log(double(data.cols()));
    double lp = 0.0;
    for (int i = 0; i < tree.node_count(); ++i) {
        const auto& n = tree.node(i);
        if (n.terminal()) continue;
        int nv = distinct_value_count(data, rows_at_node[i], n.rule.feature);
        lp -= std::log(double(std::max(1, nv))) + log_m;
    }
    lp -= log_tree_shape_count(tree.leaf_count());
    lp -= std::log(double(cfg.max_leaves));
    return lp;
}

double log_tree_prior(const DecisionTree& tree, const PriorConfig& cfg,
                      const Dataset& data) {
    if (cfg.kind == PriorKind::chipman) {
        static const std::vector<std::vector<int>> none;
        return log_tree_prior(tree, cfg, data, none);
    }
    return log_tree_prior(tree, cfg, data, node_rows(tree, data));
}

boost::multiprecision::cpp_int tree_shape_count(int k) {
    if (k < 1) throw InputError("tree_shape_count needs k >= 1");
    // Catalan(k-1), exact recurrence C_{j+1} = C_j * 2(2j+1)/(j+2)
    boost::multiprecision::cpp_int c = 1;
    for (int j = 0; j < k - 1; ++j) {
        c *= 2 * (2 * j + 1);
        c /= j + 2;
    }
    return c;
}

double log_tree_shape_count(int k) {
    if (k < 1) throw InputError("log_tree_shape_count needs k >= 1");
    // ln Catalan(k-1) = lnG(2k-1) - lnG(k+1) - lnG(k)
    return std::lgamma(2.0 * k - 1.0) - std::lgamma(k + 1.0) - std::lgamma(double(k));
}

} // namespace bdt
