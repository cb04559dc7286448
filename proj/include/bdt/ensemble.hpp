#pragma once
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bdt/config.hpp"
#include "bdt/dataset.hpp"
#include "bdt/tree.hpp"

namespace bdt {

struct ChainSummary {
    double acceptance_rate_burn_in = 0.0;
    double acceptance_rate_post_burn_in = 0.0;
    double final_log_lik = 0.0;
    bool converged = false;
};

struct EnsembleMeta {
    std::vector<std::string> feature_names;
    std::vector<FeatureRange> feature_ranges; // training-data min/max
    int class_count = 0;
    Hyperparameters hyper;
    ChainSummary summary;
};

// Thinned post burn-in tree collection, all fitted to the same training
// schema. Immutable once built; evaluation is read-only.
struct Ensemble {
    std::vector<DecisionTree> trees;
    EnsembleMeta meta;
    int size() const { return int(trees.size()); }
};

// throws SchemaError unless the feature count matches the ensemble's schema
void check_schema(const Ensemble&, const Dataset&);

// Mean of the per-tree class probability vectors.
std::vector<double> predict_ensemble(const Ensemble&, std::span<const double> x);

struct Vote {
    int cls = 0;
    double gamma = 0.0; // winning vote share, in [1/C, 1]
};

// One argmax vote per tree (ties to the lowest class); majority class and
// its vote share. Majority ties also go to the lowest class.
Vote vote_confidence(const Ensemble&, std::span<const double> x);

enum class EnvelopeStatus {
    confident_correct,
    confident_incorrect,
    uncertain,
    confident, // unlabeled data; correctness unknown
};
const char* envelope_status_name(EnvelopeStatus);

struct EnvelopeOutcome {
    int predicted = 0;
    double gamma = 0.0;
    EnvelopeStatus status = EnvelopeStatus::uncertain;
};

struct EnvelopeAggregate {
    long confident_correct = 0;   // labeled data only
    long confident_incorrect = 0; // labeled data only
    long confident = 0;           // unlabeled data only
    long uncertain = 0;
    long misclassified = 0; // labeled data only
    long total = 0;
    bool labeled = false;

    double confident_correct_rate() const { return double(confident_correct) / total; }
    double confident_incorrect_rate() const { return double(confident_incorrect) / total; }
    double confident_rate() const { return double(confident) / total; }
    double uncertain_rate() const { return double(uncertain) / total; }
    double misclassification_rate() const { return double(misclassified) / total; }
};

struct EnvelopeResult {
    std::vector<EnvelopeOutcome> outcomes;
    EnvelopeAggregate aggregate;
};

// Per-row envelope classification against threshold gamma0. The default
// entry point parallelizes over rows; the _serial variant is the reference
// kernel and must produce identical results.
EnvelopeResult classify_with_envelope(const Ensemble&, const Dataset&, double gamma0);
EnvelopeResult classify_with_envelope_serial(const Ensemble&, const Dataset&, double gamma0);

// Batch ensemble probabilities, one vector per dataset row.
std::vector<std::vector<double>> predict_ensemble_rows(const Ensemble&, const Dataset&);
std::vector<std::vector<double>> predict_ensemble_rows_serial(const Ensemble&, const Dataset&);

struct ImportanceReport {
    std::vector<double> weights; // per feature, non-negative, sums to 1
    std::vector<int> ranks;      // ranks[j] = 1-based rank of feature j
    std::vector<int> order;      // feature indices sorted by descending weight
};

// weight_j = mean over trees of (splits on feature j / splits in the tree);
// single-leaf trees contribute a uniform vector.
ImportanceReport feature_importance(const Ensemble&);

// columns: row,predicted,p_<class..>,gamma,status[,label]
void write_envelope_csv(std::ostream&, const EnvelopeResult&, const Dataset&);

} // namespace bdt
