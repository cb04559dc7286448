#pragma once
#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include "bdt/config.hpp"
#include "bdt/dataset.hpp"
#include "bdt/ensemble.hpp"
#include "bdt/likelihood.hpp"
#include "bdt/rng.hpp"
#include "bdt/tree.hpp"

namespace bdt {

enum class MoveKind { birth = 0, death = 1, change_split = 2, change_rule = 3 };
const char* move_name(MoveKind);

// Current tree plus cached row routing and scores. log_lik/log_prior always
// match a full recomputation on the fitted tree.
struct ChainState {
    DecisionTree tree;
    std::vector<std::vector<int>> rows; // rows reaching every node
    double log_lik = 0.0;
    double log_prior = 0.0;
    long iteration = 0;
};

ChainState initial_state(const Dataset&, const Hyperparameters&);

// A refitted candidate tree plus ln R, the move's proposal ratio.
// available == false means the move could not be made (counts as a
// rejected proposal).
struct Proposal {
    bool available = false;
    DecisionTree tree;
    std::vector<std::vector<int>> rows;
    double log_ratio = 0.0;
};

// Split a uniformly chosen terminal with feature ~ U(0..m-1) and threshold
// ~ U over the node's data range. ln R = ln[(d/b) (k / D_Q1) (S_k / S_{k+1})]
// with D_Q1 counted on the candidate.
Proposal propose_birth(const ChainState&, const Dataset&, const Hyperparameters&, Rng&);

// Collapse a uniformly chosen split with two terminal children.
// ln R = ln[(b/d) (D_Q / (k-1)) (S_k / S_{k-1})] with D_Q on the current tree.
Proposal propose_death(const ChainState&, const Hyperparameters&, Rng&);

// Redraw feature and threshold of a uniformly chosen internal node; the
// ratio is the reverse/forward threshold density ratio.
Proposal propose_change_split(const ChainState&, const Dataset&, const Hyperparameters&, Rng&);

// Gaussian perturbation of a uniformly chosen internal node's threshold,
// std = proposal_std on the feature's normalized scale. Symmetric, ln R = 0.
Proposal propose_change_rule(const ChainState&, const Dataset&, const Hyperparameters&, Rng&);

enum class SweepStatus { clean, swept, reject };

struct SweepResult {
    DecisionTree tree;
    std::vector<std::vector<int>> rows;
    SweepStatus status = SweepStatus::clean;
};

// Enforce the p_min rule on a refitted candidate: no undersized terminals
// keeps it unchanged; exactly one collapses that node's parent split; two or
// more rejects the candidate.
SweepResult sweep(const DecisionTree& candidate, const Dataset&, int p_min);

enum class Phase { burn_in = 0, post_burn_in = 1 };

struct StepOutcome {
    bool accepted = false;
    MoveKind move = MoveKind::birth;
    SweepStatus sweep_status = SweepStatus::clean;
};

// One Metropolis-Hastings step: draw a move, build the candidate, sweep it,
// accept with probability min(1, exp(dLogLik + dLogPrior + ln R)).
StepOutcome mh_step(ChainState&, const Dataset&, const Hyperparameters&, Rng&);

struct DiagnosticsRow {
    Phase phase = Phase::burn_in;
    long iteration = 0; // 1-based within the phase
    double log_lik = 0.0;
    int leaves = 0;
    MoveKind move = MoveKind::birth;
    bool accepted = false;
};

struct ChainDiagnostics {
    std::vector<DiagnosticsRow> trace;
    std::array<std::array<long, 4>, 2> proposed{}; // [phase][move]
    std::array<std::array<long, 4>, 2> accepted{};
    long sweep_count = 0;
    long resample_count = 0; // candidates rejected by the sweep
    bool converged = false;

    double acceptance_rate(Phase) const;
    // columns: phase,iteration,loglik,leaves,move,accepted
    void write_csv(std::ostream&) const;
};

// Run burn_in discarded steps, then post_burn_in steps collecting every
// thin-th tree. The chain is deterministic given (data, hyper, seed).
std::pair<Ensemble, ChainDiagnostics> run_chain(const Dataset&, const Hyperparameters&);

} // namespace bdt
