#pragma once

#include <stdexcept>
#include <string>

namespace spotstat {

/// Bad input data, schema, or configuration. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Data-dependent numerical failure (degenerate data, non-convergence).
/// The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spotstat
