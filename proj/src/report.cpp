#include "meshplan/report.hpp"

#include "meshplan/csv.hpp"
#include "meshplan/errors.hpp"
#include "meshplan/similarity.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace meshplan {

namespace {

/// Write through a sibling temp file and rename into place.
void atomic_write(const std::filesystem::path& path,
                  const std::function<void(const std::filesystem::path&)>& writer)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    writer(tmp);
    std::filesystem::rename(tmp, path);
}

std::string two_decimals(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

std::vector<std::string> roster_ids(const NodeRoster& roster)
{
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(roster.size()));
    for (const auto& rec : roster.nodes()) ids.push_back(rec.id);
    return ids;
}

void write_clusters_csv(const PlanReport& report, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IngestError("cannot write file: " + path.string());
    out << "id,cluster,role,gateway_score\n";
    for (Index i = 0; i < report.roster.size(); ++i)
        out << report.roster[i].id << ',' << report.assignment.labels(i) << ','
            << role_name(report.role_of(i)) << ',' << csv::format_number(report.gateways.scores(i))
            << '\n';
    if (!out) throw IngestError("write failed: " + path.string());
}

void write_nodes_clusters_csv(const PlanReport& report, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IngestError("cannot write file: " + path.string());
    out << "id,lat,lon,cluster,role\n";
    for (Index i = 0; i < report.roster.size(); ++i) {
        const auto& rec = report.roster[i];
        out << rec.id << ',';
        if (rec.latitude) out << csv::format_number(*rec.latitude);
        out << ',';
        if (rec.longitude) out << csv::format_number(*rec.longitude);
        out << ',' << report.assignment.labels(i) << ',' << role_name(report.role_of(i)) << '\n';
    }
    if (!out) throw IngestError("write failed: " + path.string());
}

}  // namespace

std::string role_name(NodeRole role)
{
    switch (role) {
        case NodeRole::primary_gw: return "primary_gw";
        case NodeRole::secondary_gw: return "secondary_gw";
        default: return "member";
    }
}

NodeRole PlanReport::role_of(Index node) const
{
    const auto& cluster = gateways.clusters[static_cast<std::size_t>(assignment.labels(node))];
    if (cluster.primary == node) return NodeRole::primary_gw;
    if (cluster.secondary && *cluster.secondary == node) return NodeRole::secondary_gw;
    return NodeRole::member;
}

std::vector<int> PlanReport::cluster_sizes() const
{
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < assignment.labels.size(); ++i)
        sizes[static_cast<std::size_t>(assignment.labels(i))] += 1;
    return sizes;
}

PlanReport compute_plan(const PlanConfig& cfg)
{
    validate(cfg);

    PlanReport report;
    report.k = cfg.k;
    report.roster = load_roster(cfg.roster_path);
    const RawPathLoss raw = load_raw_pathloss(cfg.pathloss_path, report.roster);
    report.path_loss = symmetrize(raw);

    report.budget = compute_pl_max(cfg.budget);
    report.pl_min_db = cfg.pl_min_db ? *cfg.pl_min_db : derive_pl_min(report.path_loss);

    KernelParams kernel;
    kernel.sim_lo = cfg.sim_lo;
    kernel.sim_hi = cfg.sim_hi;
    kernel.pl_max_db = report.budget.pl_max_db;
    kernel.pl_min_db = report.pl_min_db;
    report.similarity = build_similarity(report.path_loss, kernel);

    const Index n = report.roster.size();
    report.unusable_links = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (!is_usable(report.path_loss.values(i, j), report.budget)) ++report.unusable_links;
    report.connected_components = count_components(report.similarity.values);
    report.isolated = isolated_nodes(report.similarity.values);

    const ClusterConfig clustering = cluster_config(cfg);
    if (n < cfg.k)
        throw InfeasibleError("plan: fewer nodes (" + std::to_string(n) + ") than clusters (" +
                              std::to_string(cfg.k) + ")");
    if (static_cast<std::int64_t>(resolved_capacity(clustering, n)) * cfg.k < n)
        throw InfeasibleError("plan: capacity * k < n, clustering infeasible");

    const Index dim = cfg.dimension ? *cfg.dimension : cfg.k;
    report.embedding = spectral_embedding(report.similarity.values, dim);
    report.assignment = cluster(report.embedding, clustering);
    report.gateways = build_gateway_plan(report.similarity, report.assignment.labels);
    return report;
}

std::string summary_text(const PlanReport& report)
{
    std::ostringstream out;
    out << "n = " << report.roster.size() << '\n';
    out << "k = " << report.k << '\n';
    out << "cluster_sizes = ";
    const auto sizes = report.cluster_sizes();
    for (std::size_t c = 0; c < sizes.size(); ++c) out << (c ? "," : "") << sizes[c];
    out << '\n';
    out << "pl_max_db = " << two_decimals(report.budget.pl_max_db) << '\n';
    out << "pl_min_db = " << csv::format_number(report.pl_min_db) << '\n';
    out << "alpha = " << csv::format_number(report.similarity.alpha) << '\n';
    out << "unusable_links = " << report.unusable_links << '\n';
    out << "connected_components = " << report.connected_components << '\n';
    out << "isolated_nodes = ";
    for (std::size_t i = 0; i < report.isolated.size(); ++i)
        out << (i ? "," : "") << report.roster[report.isolated[i]].id;
    out << '\n';
    out << "gateways = ";
    for (std::size_t g = 0; g < report.gateways.gateway_set.size(); ++g)
        out << (g ? "," : "") << report.roster[report.gateways.gateway_set[g]].id;
    out << '\n';
    return out.str();
}

void render_heatmap(const Eigen::Ref<const Matrix>& values, const std::filesystem::path& path)
{
    for (Index i = 0; i < values.rows(); ++i)
        for (Index j = 0; j < values.cols(); ++j)
            if (!(values(i, j) >= 0.0 && values(i, j) <= 1.0))
                throw NumericalError("heatmap: matrix entry outside [0, 1]");

    atomic_write(path, [&](const std::filesystem::path& tmp) {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IngestError("cannot write file: " + tmp.string());
        out << "P5\n" << values.cols() << ' ' << values.rows() << "\n255\n";
        for (Index i = 0; i < values.rows(); ++i)
            for (Index j = 0; j < values.cols(); ++j) {
                const auto intensity =
                    static_cast<unsigned char>(std::lround(255.0 * (1.0 - values(i, j))));
                out.put(static_cast<char>(intensity));
            }
        if (!out) throw IngestError("write failed: " + tmp.string());
    });
}

void write_plan_outputs(const PlanReport& report, const std::filesystem::path& outdir)
{
    std::filesystem::create_directories(outdir);
    const auto ids = roster_ids(report.roster);

    std::vector<std::string> gateway_ids;
    for (Index g : report.gateways.gateway_set)
        gateway_ids.push_back(report.roster[g].id);

    atomic_write(outdir / "clusters.csv",
                 [&](const auto& tmp) { write_clusters_csv(report, tmp); });
    atomic_write(outdir / "nodes_clusters.csv",
                 [&](const auto& tmp) { write_nodes_clusters_csv(report, tmp); });
    atomic_write(outdir / "similarity.csv", [&](const auto& tmp) {
        write_matrix_csv(tmp, ids, report.similarity.values);
    });
    atomic_write(outdir / "gateway_similarity.csv", [&](const auto& tmp) {
        write_matrix_csv(tmp, gateway_ids, report.gateways.gateway_similarity);
    });
    atomic_write(outdir / "gateway_inter.csv", [&](const auto& tmp) {
        write_matrix_csv(tmp, gateway_ids, report.gateways.inter_cluster_restricted);
    });
    render_heatmap(report.similarity.values, outdir / "similarity.pgm");
    render_heatmap(report.gateways.gateway_similarity, outdir / "gateway_similarity.pgm");
    atomic_write(outdir / "summary.txt", [&](const auto& tmp) {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IngestError("cannot write file: " + tmp.string());
        out << summary_text(report);
        if (!out) throw IngestError("write failed: " + tmp.string());
    });
}

PlanReport run_plan(const PlanConfig& cfg)
{
    PlanReport report = compute_plan(cfg);
    write_plan_outputs(report, cfg.output_dir);
    return report;
}

void rerender_heatmaps(const std::filesystem::path& outdir)
{
    const LabeledMatrix similarity = load_matrix_csv(outdir / "similarity.csv");
    render_heatmap(similarity.values, outdir / "similarity.pgm");
    const LabeledMatrix gateway = load_matrix_csv(outdir / "gateway_similarity.csv");
    render_heatmap(gateway.values, outdir / "gateway_similarity.pgm");
}

}  // namespace meshplan
