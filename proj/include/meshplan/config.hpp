#pragma once

#include "meshplan/balanced_kmeans.hpp"
#include "meshplan/link_budget.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace meshplan {

/// One full planning run: inputs, link budget, kernel, clustering knobs.
/// Parsed from an INI-style file (sections, key = value) with CLI flag
/// overrides applied on top.
struct PlanConfig {
    std::filesystem::path roster_path;
    std::filesystem::path pathloss_path;
    std::filesystem::path output_dir;

    LinkBudgetParams budget;

    double sim_lo = 0.9;
    double sim_hi = 0.01;
    std::optional<double> pl_min_db;  // default: derived from the data

    int k = 10;
    std::optional<int> capacity;   // default ceil(n/k)
    std::optional<int> dimension;  // embedding dimension, default k
    std::uint64_t seed = 0;
    int restarts = 10;
    int max_iters = 100;
    double tol = 1e-6;
    AssignMode assign_mode = AssignMode::exact;
    bool enforce_lower_bound = true;
};

/// Parse the config file. Unknown sections or keys are ConfigErrors with
/// a line number; so are malformed values.
PlanConfig parse_plan_config(const std::filesystem::path& path);

/// Parameter sanity plus existence of the input files. ConfigError on
/// violation.
void validate(const PlanConfig& cfg);

ClusterConfig cluster_config(const PlanConfig& cfg);

AssignMode parse_assign_mode(const std::string& text);  // "exact" | "greedy"

}  // namespace meshplan
