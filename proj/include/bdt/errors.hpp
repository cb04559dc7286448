#pragma once
#include <stdexcept>
#include <string>

namespace bdt {

// Malformed tree structure: bad child links, feature index out of range.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid caller-supplied values (non-finite inputs, bad shapes).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation required a fitted/consistent object and got a stale one.
struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid hyperparameter or prior configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV or model file could not be loaded; message names file/row/column.
struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Feature count or names of a dataset do not match a model.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bdt
