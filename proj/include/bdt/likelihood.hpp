#pragma once
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bdt/config.hpp"
#include "bdt/dataset.hpp"
#include "bdt/tree.hpp"

namespace bdt {

// Integrated Dirichlet-multinomial log likelihood of one leaf's class counts
// under a symmetric Dirichlet(alpha) prior on the leaf's class distribution:
//   lnG(C a) - lnG(n + C a) + sum_c [lnG(n_c + a) - lnG(a)]
double leaf_log_marginal(std::span<const int> counts, double alpha);

// Sum of leaf_log_marginal over the tree's terminal nodes. The tree must be
// fitted to `data` (counts summing to the row count), else StateError.
double log_marginal_likelihood(const DecisionTree&, const Dataset&, double alpha);

// Same, trusting the stored counts (sampler hot path).
double log_marginal_from_counts(const DecisionTree&, double alpha);

// chipman split probability gamma * (1 + depth)^(-delta);
// throws ConfigError when it exceeds 1
double chipman_split_probability(double gamma_split, double delta_split, int depth);

// Log prior probability of the tree structure.
// uniform_leaves: -sum_splits [ln N(s_i) + ln m] - ln S_k - ln K, where
// N(s_i) counts the distinct values of the split's feature among the rows
// reaching that node. chipman: sum over internal nodes of ln P_s plus sum
// over terminals of ln(1 - P_s). May return -inf (zero-probability trees).
double log_tree_prior(const DecisionTree&, const PriorConfig&, const Dataset&);
double log_tree_prior(const DecisionTree&, const PriorConfig&, const Dataset&,
                      const std::vector<std::vector<int>>& rows_at_node);

// Number of distinct strictly binary tree shapes with k leaves,
// Catalan(k - 1). Exact arbitrary-precision value.
boost::multiprecision::cpp_int tree_shape_count(int k);

// ln of the same, usable for proposal ratios at any k.
double log_tree_shape_count(int k);

} // namespace bdt
