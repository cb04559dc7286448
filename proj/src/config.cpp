#include "bdt/config.hpp"

#include <cmath>
#include <string>

#include "bdt/dataset.hpp"
#include "bdt/errors.hpp"

namespace bdt {

void PriorConfig::validate() const {
    if (!(gamma_split > 0.0)) throw ConfigError("prior gamma_split must be > 0");
    if (!(delta_split >= 0.0)) throw ConfigError("prior delta_split must be >= 0");
    if (max_leaves < 1) throw ConfigError("prior max_leaves must be >= 1");
}

void Hyperparameters::validate(const Dataset& data) const {
    if (!data.labeled()) throw ConfigError("training data must be labeled");
    if (p_min < 1) throw ConfigError("p_min must be >= 1");
    if (p_min > data.rows())
        throw ConfigError("p_min exceeds the number of training rows");
    auto mp = move_probs.as_array();
    double sum = 0.0;
    for (double p : mp) {
        if (p < 0.0) throw ConfigError("move probabilities must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("move probabilities must sum to 1");
    if (!(proposal_std > 0.0 && proposal_std <= 1.0))
        throw ConfigError("proposal_std must be in (0, 1]");
    if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
    if (post_burn_in < 1) throw ConfigError("post_burn_in must be >= 1");
    if (thin < 1) throw ConfigError("thin must be >= 1");
    double floor = 1.0 / data.class_count();
    if (gamma0 < floor - 1e-12 || gamma0 > 1.0 + 1e-12)
        throw ConfigError("gamma0 must be in [1/C, 1]");
    if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
    prior_config(std::max(1, data.rows() - 1)).validate();
}

} // namespace bdt
