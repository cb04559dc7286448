#pragma once
#include <array>
#include <cstdint>

namespace bdt {

class Dataset;

enum class PriorKind { uniform_leaves, chipman };

// Structure prior settings. uniform_leaves penalizes a tree by the number of
// ways its splits could have been drawn; chipman splits node i with
// probability gamma_split * (1 + depth_i)^(-delta_split).
struct PriorConfig {
    PriorKind kind = PriorKind::uniform_leaves;
    double gamma_split = 0.95; // > 0
    double delta_split = 1.0;  // >= 0
    int max_leaves = 0;        // K, the dimension cap (n - 1)

    void validate() const; // throws ConfigError
};

struct MoveProbs {
    double birth = 0.1;
    double death = 0.1;
    double change_split = 0.2;
    double change_rule = 0.6;

    std::array<double, 4> as_array() const {
        return {birth, death, change_split, change_rule};
    }
};

struct Hyperparameters {
    int p_min = 15;             // minimum rows at any terminal node
    MoveProbs move_probs;       // must sum to 1
    double proposal_std = 0.3;  // change-rule std on the [0,1] feature scale
    long burn_in = 100000;
    long post_burn_in = 10000;
    int thin = 7;               // keep every thin-th post burn-in tree
    double gamma0 = 0.99;       // confidence threshold, in [1/C, 1]
    double alpha = 1.0;         // symmetric Dirichlet concentration
    PriorKind prior_kind = PriorKind::uniform_leaves;
    double gamma_split = 0.95;
    double delta_split = 1.0;
    std::uint64_t seed = 0;

    PriorConfig prior_config(int max_leaves) const {
        return {prior_kind, gamma_split, delta_split, max_leaves};
    }

    void validate(const Dataset& data) const; // throws ConfigError
};

} // namespace bdt
