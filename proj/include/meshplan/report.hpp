#pragma once

#include "meshplan/balanced_kmeans.hpp"
#include "meshplan/config.hpp"
#include "meshplan/gateway.hpp"
#include "meshplan/ingest.hpp"
#include "meshplan/link_budget.hpp"
#include "meshplan/spectral.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace meshplan {

enum class NodeRole { member, primary_gw, secondary_gw };

std::string role_name(NodeRole role);

/// Everything a planning run produced, ready for reporting.
struct PlanReport {
    NodeRoster roster;
    PathLossMatrix path_loss;
    LinkBudgetResult budget;
    double pl_min_db = 0.0;
    SimilarityMatrix similarity;
    Embedding<double> embedding;
    ClusterAssignment assignment;
    GatewayPlan gateways;
    int k = 0;
    Index unusable_links = 0;  // unordered pairs failing the budget
    int connected_components = 0;
    std::vector<Index> isolated;

    NodeRole role_of(Index node) const;
    std::vector<int> cluster_sizes() const;
};

/// The full pipeline: ingest, symmetrize, budget, similarity, embedding,
/// balanced clustering, gateway selection. Pure computation, no files
/// written.
PlanReport compute_plan(const PlanConfig& cfg);

/// Write the report files into `outdir` (created if needed). Every file
/// goes through a temp-then-rename, so a failure never leaves a partial
/// file behind.
void write_plan_outputs(const PlanReport& report, const std::filesystem::path& outdir);

/// compute_plan + write_plan_outputs into cfg.output_dir.
PlanReport run_plan(const PlanConfig& cfg);

/// Grayscale PGM, one pixel per cell, intensity round(255 * (1 - v)):
/// dark pixels are strong links, row 0 at the top. Entries must lie in
/// [0, 1].
void render_heatmap(const Eigen::Ref<const Matrix>& values, const std::filesystem::path& path);

/// Rebuild the heatmaps in `outdir` from its saved matrix CSVs.
void rerender_heatmaps(const std::filesystem::path& outdir);

std::string summary_text(const PlanReport& report);

}  // namespace meshplan
