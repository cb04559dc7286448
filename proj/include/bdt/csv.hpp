#pragma once
#include <string>

#include "bdt/dataset.hpp"

namespace bdt {

// Comma-separated, header row, "." decimal separator, LF line endings.
// The label column may hold non-negative integers or exactly two distinct
// text values (mapped to 0/1 in lexical order). Throws LoadError naming the
// offending file, row, or column.
Dataset load_csv(const std::string& path, const std::string& label_column);

// Same format without a label column; every column is a feature.
Dataset load_csv_unlabeled(const std::string& path);

// Inverse of load_csv; doubles are written in round-trip precision.
void write_csv(const Dataset&, const std::string& path,
               const std::string& label_column = "label");

} // namespace bdt
