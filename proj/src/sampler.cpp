#include "bdt/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "bdt/errors.hpp"
#include "bdt/format.hpp"

namespace bdt {

const char* move_name(MoveKind m) {
    switch (m) {
        case MoveKind::birth: return "birth";
        case MoveKind::death: return "death";
        case MoveKind::change_split: return "change-split";
        case MoveKind::change_rule: return "change-rule";
    }
    return "?";
}

namespace {

struct Fitted {
    DecisionTree tree;
    std::vector<std::vector<int>> rows;
};

Fitted fit_tree(DecisionTree t, const Dataset& data) {
    auto rows = node_rows(t, data);
    const int C = data.class_count();
    for (int i = 0; i < t.node_count(); ++i) {
        if (!t.node(i).terminal()) continue;
        std::vector<int> counts(C, 0);
        for (int r : rows[i]) counts[data.label(r)]++;
        t.set_counts(i, std::move(counts));
    }
    return {std::move(t), std::move(rows)};
}

int leaf_total(const TreeNode& n) {
    return std::accumulate(n.counts.begin(), n.counts.end(), 0);
}

std::pair<double, double> value_range(const Dataset& data,
                                      const std::vector<int>& rows, int feature) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int r : rows) {
        double v = data.at(r, feature);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

MoveKind draw_move(const MoveProbs& mp, Rng& rng) {
    double u = rng.uniform01();
    auto a = mp.as_array();
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        acc += a[i];
        if (u < acc) return MoveKind(i);
    }
    return MoveKind::change_rule;
}

// Sweep on an already fitted candidate; rows carried across the collapse.
SweepResult sweep_fitted(DecisionTree tree, std::vector<std::vector<int>> rows,
                         int p_min) {
    SweepResult out;
    std::vector<int> undersized;
    for (int i = 0; i < tree.node_count(); ++i)
        if (tree.node(i).terminal() && leaf_total(tree.node(i)) < p_min)
            undersized.push_back(i);
    if (undersized.empty()) {
        out.status = SweepStatus::clean;
        out.tree = std::move(tree);
        out.rows = std::move(rows);
        return out;
    }
    if (undersized.size() > 1) {
        out.status = SweepStatus::reject;
        return out;
    }
    int parent = tree.node(undersized[0]).parent;
    if (parent < 0) { // single undersized leaf is the whole tree
        out.status = SweepStatus::reject;
        return out;
    }
    TreeEdit e = tree.collapse(parent);
    out.tree = std::move(e.tree);
    out.rows.resize(e.source.size());
    for (std::size_t i = 0; i < e.source.size(); ++i)
        out.rows[i] = std::move(rows[e.source[i]]);
    out.status = SweepStatus::swept;
    return out;
}

} // namespace

ChainState initial_state(const Dataset& data, const Hyperparameters& hp) {
    std::vector<int> counts(data.class_count(), 0);
    for (int r = 0; r < data.rows(); ++r) counts[data.label(r)]++;
    ChainState st;
    st.tree = DecisionTree::single_leaf(std::move(counts));
    st.rows.resize(1);
    st.rows[0].resize(data.rows());
    std::iota(st.rows[0].begin(), st.rows[0].end(), 0);
    st.log_lik = log_marginal_from_counts(st.tree, hp.alpha);
    st.log_prior = log_tree_prior(st.tree, hp.prior_config(data.rows() - 1),
                                  data, st.rows);
    return st;
}

Proposal propose_birth(const ChainState& st, const Dataset& data,
                       const Hyperparameters& hp, Rng& rng) {
    Proposal out;
    const int k = st.tree.leaf_count();
    const int K = data.rows() - 1;
    if (k >= K) return out;
    auto terminals = st.tree.terminal_ids();
    bool splittable = false;
    for (int t : terminals)
        if (leaf_total(st.tree.node(t)) >= 2 * hp.p_min) splittable = true;
    if (!splittable) return out;

    int leaf = terminals[rng.uniform_int(int(terminals.size()))];
    const auto& rws = st.rows[leaf];
    if (rws.size() < 2) return out;
    int feature = rng.uniform_int(data.cols());
    auto [lo, hi] = value_range(data, rws, feature);
    if (!(hi > lo)) return out;
    double thr = rng.uniform(lo, hi);

    TreeEdit e = st.tree.split_leaf(leaf, {feature, thr});
    Fitted f = fit_tree(std::move(e.tree), data);
    int dq1 = int(f.tree.both_terminal_split_ids().size());

    out.available = true;
    out.tree = std::move(f.tree);
    out.rows = std::move(f.rows);
    out.log_ratio = std::log(hp.move_probs.death) - std::log(hp.move_probs.birth) +
                    std::log(double(k)) - std::log(double(dq1)) +
                    log_tree_shape_count(k) - log_tree_shape_count(k + 1);
    return out;
}

Proposal propose_death(const ChainState& st, const Hyperparameters& hp, Rng& rng) {
    Proposal out;
    const int k = st.tree.leaf_count();
    if (k < 2) return out;
    auto candidates = st.tree.both_terminal_split_ids();
    const int dq = int(candidates.size());
    int pick = candidates[rng.uniform_int(dq)];

    TreeEdit e = st.tree.collapse(pick);
    out.available = true;
    out.tree = std::move(e.tree);
    out.rows.resize(e.source.size());
    for (std::size_t i = 0; i < e.source.size(); ++i)
        out.rows[i] = st.rows[e.source[i]];
    out.log_ratio = std::log(hp.move_probs.birth) - std::log(hp.move_probs.death) +
                    std::log(double(dq)) - std::log(double(k - 1)) +
                    log_tree_shape_count(k) - log_tree_shape_count(k - 1);
    return out;
}

Proposal propose_change_split(const ChainState& st, const Dataset& data,
                              const Hyperparameters& hp, Rng& rng) {
    (void)hp;
    Proposal out;
    if (st.tree.leaf_count() < 2) return out;
    auto internals = st.tree.internal_ids();
    int node = internals[rng.uniform_int(int(internals.size()))];
    const auto& rws = st.rows[node];

    int feature = rng.uniform_int(data.cols());
    auto [lo, hi] = value_range(data, rws, feature);
    if (!(hi > lo)) return out;
    double thr = rng.uniform(lo, hi);
    double w_fwd = hi - lo;

    // density of re-drawing the outgoing rule; zero kills the move
    const SplitRule old = st.tree.node(node).rule;
    auto [rlo, rhi] = value_range(data, rws, old.feature);
    double w_rev = rhi - rlo;
    if (!(w_rev > 0) || old.threshold < rlo || old.threshold > rhi) return out;

    Fitted f = fit_tree(st.tree.replace_rule(node, {feature, thr}), data);
    out.available = true;
    out.tree = std::move(f.tree);
    out.rows = std::move(f.rows);
    out.log_ratio = std::log(w_fwd) - std::log(w_rev);
    return out;
}

Proposal propose_change_rule(const ChainState& st, const Dataset& data,
                             const Hyperparameters& hp, Rng& rng) {
    Proposal out;
    if (st.tree.leaf_count() < 2) return out;
    auto internals = st.tree.internal_ids();
    int node = internals[rng.uniform_int(int(internals.size()))];
    const SplitRule old = st.tree.node(node).rule;
    double width = data.feature_ranges()[old.feature].width();
    double thr = old.threshold + rng.normal() * hp.proposal_std * width;

    Fitted f = fit_tree(st.tree.replace_rule(node, {old.feature, thr}), data);
    out.available = true;
    out.tree = std::move(f.tree);
    out.rows = std::move(f.rows);
    out.log_ratio = 0.0;
    return out;
}

SweepResult sweep(const DecisionTree& candidate, const Dataset& data, int p_min) {
    Fitted f = fit_tree(candidate, data);
    return sweep_fitted(std::move(f.tree), std::move(f.rows), p_min);
}

StepOutcome mh_step(ChainState& st, const Dataset& data,
                    const Hyperparameters& hp, Rng& rng) {
    StepOutcome out;
    out.move = draw_move(hp.move_probs, rng);
    st.iteration++;

    Proposal prop;
    switch (out.move) {
        case MoveKind::birth: prop = propose_birth(st, data, hp, rng); break;
        case MoveKind::death: prop = propose_death(st, hp, rng); break;
        case MoveKind::change_split: prop = propose_change_split(st, data, hp, rng); break;
        case MoveKind::change_rule: prop = propose_change_rule(st, data, hp, rng); break;
    }
    if (!prop.available) return out;

    SweepResult sw = sweep_fitted(std::move(prop.tree), std::move(prop.rows), hp.p_min);
    out.sweep_status = sw.status;
    if (sw.status == SweepStatus::reject) return out;

    double cand_ll = log_marginal_from_counts(sw.tree, hp.alpha);
    double cand_lp = log_tree_prior(sw.tree, hp.prior_config(data.rows() - 1),
                                    data, sw.rows);
    bool accept;
    if (!std::isfinite(cand_lp)) {
        accept = false;
    } else if (!std::isfinite(st.log_prior)) {
        accept = true; // escape a zero-prior state
    } else {
        double log_a = (cand_ll - st.log_lik) + (cand_lp - st.log_prior) +
                       prop.log_ratio;
        accept = log_a >= 0.0 || std::log(rng.uniform01()) < log_a;
    }
    if (accept) {
        st.tree = std::move(sw.tree);
        st.rows = std::move(sw.rows);
        st.log_lik = cand_ll;
        st.log_prior = cand_lp;
        out.accepted = true;
    }
    return out;
}

double ChainDiagnostics::acceptance_rate(Phase ph) const {
    long p = 0, a = 0;
    for (int m = 0; m < 4; ++m) {
        p += proposed[int(ph)][m];
        a += accepted[int(ph)][m];
    }
    return p == 0 ? 0.0 : double(a) / double(p);
}

void ChainDiagnostics::write_csv(std::ostream& os) const {
    os << "phase,iteration,loglik,leaves,move,accepted\n";
    for (const auto& r : trace) {
        os << (r.phase == Phase::burn_in ? "burnin" : "postburnin") << ','
           << r.iteration << ',' << format_double(r.log_lik) << ',' << r.leaves
           << ',' << move_name(r.move) << ',' << (r.accepted ? 1 : 0) << '\n';
    }
}

std::pair<Ensemble, ChainDiagnostics> run_chain(const Dataset& data,
                                                const Hyperparameters& hp) {
    hp.validate(data);
    if (hp.post_burn_in / hp.thin < 2)
        throw ConfigError(
            "post_burn_in/thin must be >= 2 so the ensemble can average");

    Rng rng(hp.seed);
    ChainState st = initial_state(data, hp);
    ChainDiagnostics diag;
    diag.trace.reserve(std::size_t(hp.burn_in + hp.post_burn_in));

    auto record = [&](Phase ph, long iter, const StepOutcome& o) {
        diag.trace.push_back(
            {ph, iter, st.log_lik, st.tree.leaf_count(), o.move, o.accepted});
        diag.proposed[int(ph)][int(o.move)]++;
        if (o.accepted) diag.accepted[int(ph)][int(o.move)]++;
        if (o.sweep_status == SweepStatus::swept) diag.sweep_count++;
        if (o.sweep_status == SweepStatus::reject) diag.resample_count++;
    };

    for (long i = 1; i <= hp.burn_in; ++i)
        record(Phase::burn_in, i, mh_step(st, data, hp, rng));

    const long w = hp.burn_in / 10;
    if (w < 1) {
        diag.converged = true;
    } else {
        double first = 0.0, last = 0.0;
        for (long i = 0; i < w; ++i) first += diag.trace[i].log_lik;
        for (long i = hp.burn_in - w; i < hp.burn_in; ++i)
            last += diag.trace[i].log_lik;
        diag.converged = last / w > first / w;
    }

    Ensemble ens;
    ens.trees.reserve(std::size_t(hp.post_burn_in / hp.thin));
    for (long i = 1; i <= hp.post_burn_in; ++i) {
        record(Phase::post_burn_in, i, mh_step(st, data, hp, rng));
        if (i % hp.thin == 0) ens.trees.push_back(st.tree);
    }

    ens.meta.feature_names = data.feature_names();
    ens.meta.feature_ranges = data.feature_ranges();
    ens.meta.class_count = data.class_count();
    ens.meta.hyper = hp;
    ens.meta.summary = {diag.acceptance_rate(Phase::burn_in),
                        diag.acceptance_rate(Phase::post_burn_in), st.log_lik,
                        diag.converged};
    return {std::move(ens), std::move(diag)};
}

} // namespace bdt
