#include "bdt/dataset.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "bdt/errors.hpp"

namespace bdt {

namespace {

std::vector<FeatureRange> compute_ranges(const std::vector<double>& x, int rows,
                                         int cols) {
    std::vector<FeatureRange> r(cols);
    for (int c = 0; c < cols; ++c) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < rows; ++i) {
            double v = x[std::size_t(i) * cols + c];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        r[c] = {lo, hi};
    }
    return r;
}

} // namespace

Dataset::Dataset(std::vector<double> features, int cols, std::vector<int> labels,
                 std::vector<std::string> feature_names, int class_count)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      names_(std::move(feature_names)),
      cols_(cols),
      class_count_(class_count) {
    if (cols_ < 1) throw InputError("dataset needs at least one feature column");
    if (features_.size() % cols_ != 0)
        throw InputError("feature buffer size is not a multiple of the column count");
    rows_ = int(features_.size() / cols_);
    if (int(names_.size()) != cols_)
        throw InputError("featureNames must have exactly one entry per column");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second)
            throw InputError("duplicate feature name: " + n);
    for (double v : features_)
        if (!std::isfinite(v))
            throw InputError("dataset contains a non-finite feature value");
    if (!labels_.empty()) {
        if (rows_ < 2) throw InputError("labeled dataset needs at least 2 rows");
        if (class_count_ < 2) throw InputError("classCount must be at least 2");
        if (int(labels_.size()) != rows_)
            throw InputError("label count does not match row count");
        for (int y : labels_)
            if (y < 0 || y >= class_count_)
                throw InputError("label " + std::to_string(y) +
                                 " outside [0, " + std::to_string(class_count_) + ")");
    } else {
        if (rows_ < 1) throw InputError("dataset has no rows");
        class_count_ = 0;
    }
    ranges_ = compute_ranges(features_, rows_, cols_);
}

Dataset Dataset::unlabeled(std::vector<double> features, int cols,
                           std::vector<std::string> feature_names) {
    return Dataset(std::move(features), cols, {}, std::move(feature_names), 0);
}

} // namespace bdt
