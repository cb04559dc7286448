#pragma once
#include <vector>

#include "bdt/ensemble.hpp"
#include "bdt/likelihood.hpp"

namespace bdt {

enum class SelectionMethod { sc, map, mapw };
const char* method_name(SelectionMethod);

struct SelectionReport {
    DecisionTree chosen;
    int chosen_index = -1; // position in chain order
    SelectionMethod method = SelectionMethod::sc;
    long s1 = 0, s2 = 0, s3 = 0; // SC candidate set sizes, nested
    long train_coverage = 0; // confident-correct rows the chosen tree gets right
    int tree_size = 0;       // total node count
};

// Four-step filter: S1 = trees covering the most rows the ensemble classified
// confident-and-correct; S2 = trees in S1 with the fewest errors on the rows
// the ensemble got right; S3 = smallest trees in S2; first of S3 wins.
// With zero confident-correct rows the filter degenerates to steps 2-4 over
// the whole ensemble.
SelectionReport select_sc(const Ensemble&, const Dataset& train, double gamma0);

// Tree maximizing log marginal likelihood + log prior on the training data.
// Ties break to the smaller tree, then chain order.
SelectionReport select_map(const Ensemble&, const Dataset& train, const PriorConfig&);

struct MapAuditRow {
    int index = 0;
    double log_lik = 0.0;
    double log_prior = 0.0;
    double score = 0.0;
    int size = 0;
};
std::vector<MapAuditRow> map_scores(const Ensemble&, const Dataset&, const PriorConfig&);

// Modal tree structure by sampled frequency. Trees are equivalent when they
// share shape and split features and their thresholds agree within
// `threshold_tolerance` on each feature's normalized scale. Ties break to the
// group with the smaller tree, then earlier appearance.
SelectionReport select_mapw(const Ensemble&, double threshold_tolerance);

struct MapwGroup {
    int representative = 0; // chain index of the first member
    long count = 0;
};
std::vector<MapwGroup> mapw_groups(const Ensemble&, double threshold_tolerance);

bool same_structure(const DecisionTree&, const DecisionTree&,
                    const std::vector<FeatureRange>&, double threshold_tolerance);

} // namespace bdt
