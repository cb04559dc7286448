#include "bdt/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "bdt/errors.hpp"
#include "bdt/format.hpp"

namespace bdt {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw LoadError(path + ": file is empty");
    return lines;
}

Dataset load_impl(const std::string& path, const std::string& label_column,
                  bool labeled) {
    auto lines = read_lines(path);
    auto header = split_fields(lines[0]);
    const int total_cols = int(header.size());

    int label_col = -1;
    if (labeled) {
        for (int c = 0; c < total_cols; ++c)
            if (header[c] == label_column) label_col = c;
        if (label_col < 0)
            throw LoadError(path + ": unknown label column '" + label_column + "'");
    }
    const int m = labeled ? total_cols - 1 : total_cols;
    if (m < 1) throw LoadError(path + ": no feature columns");

    std::vector<std::string> names;
    for (int c = 0; c < total_cols; ++c)
        if (c != label_col) names.push_back(header[c]);

    const int n = int(lines.size()) - 1;
    std::vector<double> features;
    features.reserve(std::size_t(n) * m);
    std::vector<std::string> raw_labels;
    raw_labels.reserve(labeled ? n : 0);

    for (int i = 1; i <= n; ++i) {
        auto fields = split_fields(lines[i]);
        if (int(fields.size()) != total_cols)
            throw LoadError(path + ": ragged row " + std::to_string(i) +
                            ": expected " + std::to_string(total_cols) +
                            " fields, got " + std::to_string(fields.size()));
        for (int c = 0; c < total_cols; ++c) {
            if (c == label_col) {
                raw_labels.push_back(fields[c]);
                continue;
            }
            if (fields[c].empty())
                throw LoadError(path + ": row " + std::to_string(i) +
                                ", column '" + header[c] + "': missing value");
            double v;
            if (!parse_double(fields[c], v))
                throw LoadError(path + ": row " + std::to_string(i) +
                                ", column '" + header[c] +
                                "': non-numeric value '" + fields[c] + "'");
            if (!std::isfinite(v))
                throw LoadError(path + ": row " + std::to_string(i) +
                                ", column '" + header[c] + "': non-finite value");
            features.push_back(v);
        }
    }

    if (!labeled) return Dataset::unlabeled(std::move(features), m, std::move(names));

    // integer labels, or exactly two text values mapped in lexical order
    std::vector<int> labels(n);
    bool all_int = true;
    for (const auto& s : raw_labels) {
        int v;
        if (!parse_int(s, v)) {
            all_int = false;
            break;
        }
    }
    if (all_int) {
        int max_label = 0;
        for (int i = 0; i < n; ++i) {
            int v;
            parse_int(raw_labels[i], v);
            if (v < 0)
                throw LoadError(path + ": row " + std::to_string(i + 1) +
                                ": negative label " + std::to_string(v));
            labels[i] = v;
            max_label = std::max(max_label, v);
        }
        if (max_label < 1)
            throw LoadError(path + ": label column '" + label_column +
                            "' holds a single class");
        return Dataset(std::move(features), m, std::move(labels),
                       std::move(names), max_label + 1);
    }
    std::map<std::string, int> mapping;
    for (const auto& s : raw_labels) mapping.emplace(s, 0);
    if (mapping.size() != 2)
        throw LoadError(path + ": label column '" + label_column + "' has " +
                        std::to_string(mapping.size()) +
                        " distinct text values, expected 2");
    int next = 0;
    for (auto& [key, idx] : mapping) idx = next++; // lexical order
    for (int i = 0; i < n; ++i) labels[i] = mapping[raw_labels[i]];
    return Dataset(std::move(features), m, std::move(labels), std::move(names), 2);
}

} // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
    return load_impl(path, label_column, true);
}

Dataset load_csv_unlabeled(const std::string& path) {
    return load_impl(path, "", false);
}

void write_csv(const Dataset& data, const std::string& path,
               const std::string& label_column) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write file: " + path);
    for (int c = 0; c < data.cols(); ++c) {
        if (c) out << ',';
        out << data.feature_names()[c];
    }
    if (data.labeled()) out << ',' << label_column;
    out << '\n';
    for (int r = 0; r < data.rows(); ++r) {
        for (int c = 0; c < data.cols(); ++c) {
            if (c) out << ',';
            out << format_double(data.at(r, c));
        }
        if (data.labeled()) out << ',' << data.label(r);
        out << '\n';
    }
    if (!out) throw LoadError("write failed: " + path);
}

} // namespace bdt
