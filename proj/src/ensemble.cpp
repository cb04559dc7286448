#include "bdt/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "bdt/errors.hpp"
#include "bdt/format.hpp"

namespace bdt {

const char* envelope_status_name(EnvelopeStatus s) {
    switch (s) {
        case EnvelopeStatus::confident_correct: return "confident-correct";
        case EnvelopeStatus::confident_incorrect: return "confident-incorrect";
        case EnvelopeStatus::uncertain: return "uncertain";
        case EnvelopeStatus::confident: return "confident";
    }
    return "?";
}

void check_schema(const Ensemble& ens, const Dataset& data) {
    int expected = int(ens.meta.feature_names.size());
    if (data.cols() != expected)
        throw SchemaError("feature count mismatch: model expects " +
                          std::to_string(expected) + " features, data has " +
                          std::to_string(data.cols()));
}

std::vector<double> predict_ensemble(const Ensemble& ens,
                                     std::span<const double> x) {
    if (ens.trees.empty()) throw StateError("ensemble is empty");
    if (int(x.size()) != int(ens.meta.feature_names.size()))
        throw SchemaError("input vector length does not match the model schema");
    const int C = ens.meta.class_count;
    const double alpha = ens.meta.hyper.alpha;
    std::vector<double> mean(C, 0.0);
    for (const auto& t : ens.trees) {
        auto p = predict_tree(t, x, alpha);
        for (int c = 0; c < C; ++c) mean[c] += p[c];
    }
    for (int c = 0; c < C; ++c) mean[c] /= double(ens.size());
    return mean;
}

Vote vote_confidence(const Ensemble& ens, std::span<const double> x) {
    if (ens.trees.empty()) throw StateError("ensemble is empty");
    const int C = ens.meta.class_count;
    std::vector<int> votes(C, 0);
    for (const auto& t : ens.trees) votes[predict_tree_class(t, x)]++;
    int win = 0;
    for (int c = 1; c < C; ++c)
        if (votes[c] > votes[win]) win = c;
    return {win, double(votes[win]) / double(ens.size())};
}

namespace {

EnvelopeOutcome envelope_row(const Ensemble& ens, const Dataset& data, int r,
                             double gamma0) {
    Vote v = vote_confidence(ens, data.row(r));
    EnvelopeOutcome o;
    o.predicted = v.cls;
    o.gamma = v.gamma;
    bool confident = v.gamma >= gamma0;
    if (!data.labeled()) {
        o.status = confident ? EnvelopeStatus::confident : EnvelopeStatus::uncertain;
    } else if (!confident) {
        o.status = EnvelopeStatus::uncertain;
    } else {
        o.status = v.cls == data.label(r) ? EnvelopeStatus::confident_correct
                                          : EnvelopeStatus::confident_incorrect;
    }
    return o;
}

EnvelopeResult aggregate_outcomes(std::vector<EnvelopeOutcome> outcomes,
                                  const Dataset& data) {
    EnvelopeResult res;
    res.aggregate.total = data.rows();
    res.aggregate.labeled = data.labeled();
    for (int r = 0; r < data.rows(); ++r) {
        const auto& o = outcomes[r];
        switch (o.status) {
            case EnvelopeStatus::confident_correct: res.aggregate.confident_correct++; break;
            case EnvelopeStatus::confident_incorrect: res.aggregate.confident_incorrect++; break;
            case EnvelopeStatus::confident: res.aggregate.confident++; break;
            case EnvelopeStatus::uncertain: res.aggregate.uncertain++; break;
        }
        if (data.labeled() && o.predicted != data.label(r))
            res.aggregate.misclassified++;
    }
    res.outcomes = std::move(outcomes);
    return res;
}

void validate_gamma0(const Ensemble& ens, double gamma0) {
    double floor = 1.0 / ens.meta.class_count;
    if (gamma0 < floor - 1e-12 || gamma0 > 1.0 + 1e-12)
        throw InputError("gamma0 must be in [1/C, 1]");
}

} // namespace

EnvelopeResult classify_with_envelope_serial(const Ensemble& ens,
                                             const Dataset& data,
                                             double gamma0) {
    check_schema(ens, data);
    validate_gamma0(ens, gamma0);
    std::vector<EnvelopeOutcome> outcomes(data.rows());
    for (int r = 0; r < data.rows(); ++r)
        outcomes[r] = envelope_row(ens, data, r, gamma0);
    return aggregate_outcomes(std::move(outcomes), data);
}

EnvelopeResult classify_with_envelope(const Ensemble& ens, const Dataset& data,
                                      double gamma0) {
    check_schema(ens, data);
    validate_gamma0(ens, gamma0);
    const int n = data.rows();
    std::vector<EnvelopeOutcome> outcomes(n);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) outcomes[r] = envelope_row(ens, data, r, gamma0);
    return aggregate_outcomes(std::move(outcomes), data);
}

std::vector<std::vector<double>> predict_ensemble_rows_serial(const Ensemble& ens,
                                                              const Dataset& data) {
    check_schema(ens, data);
    std::vector<std::vector<double>> out(data.rows());
    for (int r = 0; r < data.rows(); ++r)
        out[r] = predict_ensemble(ens, data.row(r));
    return out;
}

std::vector<std::vector<double>> predict_ensemble_rows(const Ensemble& ens,
                                                       const Dataset& data) {
    check_schema(ens, data);
    const int n = data.rows();
    std::vector<std::vector<double>> out(n);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) out[r] = predict_ensemble(ens, data.row(r));
    return out;
}

ImportanceReport feature_importance(const Ensemble& ens) {
    if (ens.trees.empty()) throw StateError("ensemble is empty");
    const int m = int(ens.meta.feature_names.size());
    ImportanceReport rep;
    rep.weights.assign(m, 0.0);
    for (const auto& t : ens.trees) {
        std::vector<int> splits(m, 0);
        int total = 0;
        for (const auto& n : t.nodes()) {
            if (n.terminal()) continue;
            splits[n.rule.feature]++;
            total++;
        }
        if (total == 0) {
            for (int j = 0; j < m; ++j) rep.weights[j] += 1.0 / m;
        } else {
            for (int j = 0; j < m; ++j)
                rep.weights[j] += double(splits[j]) / double(total);
        }
    }
    for (int j = 0; j < m; ++j) rep.weights[j] /= double(ens.size());

    rep.order.resize(m);
    std::iota(rep.order.begin(), rep.order.end(), 0);
    std::stable_sort(rep.order.begin(), rep.order.end(), [&](int a, int b) {
        if (rep.weights[a] != rep.weights[b]) return rep.weights[a] > rep.weights[b];
        return a < b;
    });
    rep.ranks.assign(m, 0);
    for (int pos = 0; pos < m; ++pos) rep.ranks[rep.order[pos]] = pos + 1;
    return rep;
}

void write_envelope_csv(std::ostream& os, const EnvelopeResult& res,
                        const Dataset& data) {
    os << "row,predicted,gamma,status";
    if (data.labeled()) os << ",label";
    os << '\n';
    for (int r = 0; r < data.rows(); ++r) {
        const auto& o = res.outcomes[r];
        os << r << ',' << o.predicted << ',' << format_double(o.gamma) << ','
           << envelope_status_name(o.status);
        if (data.labeled()) os << ',' << data.label(r);
        os << '\n';
    }
}

} // namespace bdt
