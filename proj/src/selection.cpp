#include "bdt/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bdt/errors.hpp"

namespace bdt {

const char* method_name(SelectionMethod m) {
    switch (m) {
        case SelectionMethod::sc: return "sc";
        case SelectionMethod::map: return "map";
        case SelectionMethod::mapw: return "mapw";
    }
    return "?";
}

SelectionReport select_sc(const Ensemble& ens, const Dataset& train,
                          double gamma0) {
    if (ens.trees.empty()) throw StateError("ensemble is empty");
    if (!train.labeled()) throw InputError("SC selection needs labeled data");
    const int N = ens.size();
    const int n = train.rows();

    EnvelopeResult env = classify_with_envelope(ens, train, gamma0);
    std::vector<char> cc(n, 0), kept(n, 0);
    for (int r = 0; r < n; ++r) {
        cc[r] = env.outcomes[r].status == EnvelopeStatus::confident_correct;
        kept[r] = env.outcomes[r].predicted == train.label(r); // D1 rows
    }

    // per-tree tallies over the confident-correct rows and over D1
    std::vector<long> cover(N, 0), errors(N, 0);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < N; ++t) {
        for (int r = 0; r < n; ++r) {
            if (!cc[r] && !kept[r]) continue;
            int pred = predict_tree_class(ens.trees[t], train.row(r));
            bool correct = pred == train.label(r);
            if (cc[r] && correct) cover[t]++;
            if (kept[r] && !correct) errors[t]++;
        }
    }

    bool degenerate = std::count(cc.begin(), cc.end(), 1) == 0;

    long best_cover = *std::max_element(cover.begin(), cover.end());
    auto in_s1 = [&](int t) { return degenerate || cover[t] == best_cover; };

    long best_err = std::numeric_limits<long>::max();
    for (int t = 0; t < N; ++t)
        if (in_s1(t)) best_err = std::min(best_err, errors[t]);
    auto in_s2 = [&](int t) { return in_s1(t) && errors[t] == best_err; };

    int best_size = std::numeric_limits<int>::max();
    for (int t = 0; t < N; ++t)
        if (in_s2(t)) best_size = std::min(best_size, ens.trees[t].node_count());

    SelectionReport rep;
    rep.method = SelectionMethod::sc;
    for (int t = 0; t < N; ++t) {
        if (in_s1(t)) rep.s1++;
        if (in_s2(t)) {
            rep.s2++;
            if (ens.trees[t].node_count() == best_size) {
                rep.s3++;
                if (rep.chosen_index < 0) rep.chosen_index = t;
            }
        }
    }
    rep.chosen = ens.trees[rep.chosen_index];
    rep.train_coverage = cover[rep.chosen_index];
    rep.tree_size = rep.chosen.node_count();
    return rep;
}

std::vector<MapAuditRow> map_scores(const Ensemble& ens, const Dataset& train,
                                    const PriorConfig& prior) {
    if (ens.trees.empty()) throw StateError("ensemble is empty");
    const int N = ens.size();
    std::vector<MapAuditRow> rows(N);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < N; ++t) {
        double ll = log_marginal_likelihood(ens.trees[t], train, ens.meta.hyper.alpha);
        double lp = log_tree_prior(ens.trees[t], prior, train);
        rows[t] = {t, ll, lp, ll + lp, ens.trees[t].node_count()};
    }
    return rows;
}

SelectionReport select_map(const Ensemble& ens, const Dataset& train,
                           const PriorConfig& prior) {
    auto rows = map_scores(ens, train, prior);
    int best = 0;
    for (int t = 1; t < int(rows.size()); ++t) {
        if (rows[t].score > rows[best].score ||
            (rows[t].score == rows[best].score && rows[t].size < rows[best].size))
            best = t;
    }
    SelectionReport rep;
    rep.method = SelectionMethod::map;
    rep.chosen_index = best;
    rep.chosen = ens.trees[best];
    rep.tree_size = rows[best].size;
    return rep;
}

bool same_structure(const DecisionTree& a, const DecisionTree& b,
                    const std::vector<FeatureRange>& ranges, double tol) {
    if (a.node_count() != b.node_count()) return false;
    for (int i = 0; i < a.node_count(); ++i) {
        const TreeNode& na = a.node(i);
        const TreeNode& nb = b.node(i);
        if (na.terminal() != nb.terminal()) return false;
        if (na.terminal()) continue;
        if (na.rule.feature != nb.rule.feature) return false;
        double width = ranges[na.rule.feature].width();
        double diff = std::abs(na.rule.threshold - nb.rule.threshold);
        if (width > 0 ? diff / width > tol : diff != 0.0) return false;
    }
    return true;
}

std::vector<MapwGroup> mapw_groups(const Ensemble& ens, double tol) {
    if (ens.trees.empty()) throw StateError("ensemble is empty");
    std::vector<MapwGroup> groups;
    for (int t = 0; t < ens.size(); ++t) {
        bool placed = false;
        for (auto& g : groups) {
            if (same_structure(ens.trees[t], ens.trees[g.representative],
                               ens.meta.feature_ranges, tol)) {
                g.count++;
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({t, 1});
    }
    return groups;
}

SelectionReport select_mapw(const Ensemble& ens, double tol) {
    auto groups = mapw_groups(ens, tol);
    int best = 0;
    for (int g = 1; g < int(groups.size()); ++g) {
        int sz = ens.trees[groups[g].representative].node_count();
        int best_sz = ens.trees[groups[best].representative].node_count();
        if (groups[g].count > groups[best].count ||
            (groups[g].count == groups[best].count && sz < best_sz))
            best = g;
    }
    SelectionReport rep;
    rep.method = SelectionMethod::mapw;
    rep.chosen_index = groups[best].representative;
    rep.chosen = ens.trees[rep.chosen_index];
    rep.tree_size = rep.chosen.node_count();
    return rep;
}

} // namespace bdt
