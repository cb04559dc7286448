#pragma once
#include <span>
#include <string>
#include <vector>

namespace bdt {

struct FeatureRange {
    double min = 0.0;
    double max = 0.0;
    double width() const { return max - min; }
};

// Row-major feature matrix with integer class labels in [0, C).
// Labels may be absent (prediction inputs); the training-side invariants
// (n >= 2, C >= 2, labels in range) are enforced only when labels are given.
// Immutable after construction, safe to share across threads.
class Dataset {
public:
    Dataset(std::vector<double> features, int cols, std::vector<int> labels,
            std::vector<std::string> feature_names, int class_count);

    static Dataset unlabeled(std::vector<double> features, int cols,
                             std::vector<std::string> feature_names);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int class_count() const { return class_count_; }
    bool labeled() const { return !labels_.empty(); }

    double at(int r, int c) const {
        return features_[std::size_t(r) * cols_ + c];
    }
    std::span<const double> row(int r) const {
        return {features_.data() + std::size_t(r) * cols_, std::size_t(cols_)};
    }
    int label(int r) const { return labels_[r]; }

    const std::vector<double>& features() const { return features_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::string>& feature_names() const { return names_; }

    // per-feature min/max over all rows; used for proposal normalization
    const std::vector<FeatureRange>& feature_ranges() const { return ranges_; }

private:
    std::vector<double> features_;
    std::vector<int> labels_;
    std::vector<std::string> names_;
    std::vector<FeatureRange> ranges_;
    int rows_ = 0;
    int cols_ = 0;
    int class_count_ = 0;
};

} // namespace bdt
