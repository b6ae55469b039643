#pragma once

#include <exception>
#include <stdexcept>

namespace meshplan {

/// Bad user-supplied configuration (files, parameters, flags).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data files.
struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: degenerate kernel range, eigensolver breakdown,
/// out-of-range matrix values.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Clustering constraints cannot be satisfied (k * capacity < n, n < k).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int config = 2;
inline constexpr int ingest = 3;
inline constexpr int numerical = 4;
inline constexpr int infeasible = 5;
}  // namespace exit_code

/// Process exit code for an error escaping the pipeline.
inline int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ConfigError*>(&e)) return exit_code::config;
    if (dynamic_cast<const IngestError*>(&e)) return exit_code::ingest;
    if (dynamic_cast<const NumericalError*>(&e)) return exit_code::numerical;
    if (dynamic_cast<const InfeasibleError*>(&e)) return exit_code::infeasible;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return exit_code::config;
    return exit_code::failure;
}

}  // namespace meshplan
