#include "meshplan/config.hpp"
#include "meshplan/csv.hpp"
#include "meshplan/errors.hpp"
#include "meshplan/ingest.hpp"
#include "meshplan/report.hpp"
#include "meshplan/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

int run_synth(const meshplan::SynthConfig& cfg, const std::string& roster_out,
              const std::string& pathloss_out)
{
    auto [roster, raw] = meshplan::synth_scenario(cfg);
    meshplan::write_roster_csv(roster_out, roster);

    std::vector<std::string> ids;
    for (const auto& rec : roster.nodes()) ids.push_back(rec.id);
    meshplan::write_matrix_csv(pathloss_out, ids, raw.values);

    std::cout << "wrote " << roster_out << " and " << pathloss_out << " (" << roster.size()
              << " nodes)\n";
    return meshplan::exit_code::ok;
}

int run_budget(const meshplan::LinkBudgetParams& params)
{
    const auto result = meshplan::compute_pl_max(params);
    std::printf("%.2f\n", result.pl_max_db);
    return meshplan::exit_code::ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"RF mesh cluster planner: path-loss data in, balanced cluster plan with "
                 "primary/secondary gateways out"};
    app.require_subcommand(1);

    // ---- synth ----------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "Generate a synthetic roster and path-loss matrix");
    meshplan::SynthConfig synth_cfg;
    std::string roster_out = "nodes.csv";
    std::string pathloss_out = "pathloss.csv";
    long long synth_nodes = static_cast<long long>(synth_cfg.n_nodes);
    synth->add_option("--nodes", synth_nodes, "Node count")->capture_default_str();
    synth->add_option("--width-m", synth_cfg.region_width_m, "Region width in meters")
        ->capture_default_str();
    synth->add_option("--height-m", synth_cfg.region_height_m, "Region height in meters")
        ->capture_default_str();
    synth->add_option("--frequency-hz", synth_cfg.frequency_hz, "Carrier frequency in Hz")
        ->capture_default_str();
    synth->add_option("--exponent", synth_cfg.path_loss_exponent, "Path-loss exponent")
        ->capture_default_str();
    synth->add_option("--foliage-db-per-m", synth_cfg.foliage_db_per_m,
                      "Foliage specific attenuation, dB per meter")
        ->capture_default_str();
    synth->add_option("--foliage-fraction", synth_cfg.foliage_fraction,
                      "Fraction of each link length through foliage")
        ->capture_default_str();
    synth->add_option("--sigma-db", synth_cfg.shadowing_sigma_db,
                      "Per-direction shadowing std-dev in dB")
        ->capture_default_str();
    synth->add_option("--seed", synth_cfg.seed, "RNG seed")->capture_default_str();
    synth->add_option("--roster-out", roster_out, "Roster CSV output path")
        ->capture_default_str();
    synth->add_option("--pathloss-out", pathloss_out, "Path-loss CSV output path")
        ->capture_default_str();

    // ---- budget ---------------------------------------------------------
    auto* budget = app.add_subcommand("budget", "Compute the maximum tolerable path loss");
    meshplan::LinkBudgetParams budget_params;
    budget->add_option("--tx-power-dbm", budget_params.tx_power_dbm, "Peak output power, dBm")
        ->capture_default_str();
    budget->add_option("--tx-gain-dbi", budget_params.tx_gain_dbi, "Tx antenna gain, dBi")
        ->capture_default_str();
    budget->add_option("--rx-gain-dbi", budget_params.rx_gain_dbi, "Rx antenna gain, dBi")
        ->capture_default_str();
    budget
        ->add_option("--system-losses-db", budget_params.system_losses_db,
                     "Total system losses, dB (non-positive)")
        ->capture_default_str();
    budget
        ->add_option("--rx-sensitivity-dbm", budget_params.rx_sensitivity_dbm,
                     "Minimum receiver sensitivity, dBm")
        ->capture_default_str();
    budget->add_option("--link-margin-db", budget_params.link_margin_db, "Link margin, dB")
        ->capture_default_str();

    // ---- plan -----------------------------------------------------------
    auto* plan = app.add_subcommand("plan", "Run the full clustering pipeline");
    std::string config_path;
    std::string opt_roster, opt_pathloss, opt_outdir, opt_assign_mode, eigenvalues_out;
    int opt_k = 0, opt_capacity = 0, opt_dimension = 0, opt_restarts = 0, opt_max_iters = 0;
    std::uint64_t opt_seed = 0;
    double opt_sim_lo = 0, opt_sim_hi = 0, opt_pl_min = 0, opt_tol = 0;
    meshplan::LinkBudgetParams plan_budget;
    bool opt_no_lower_bound = false;
    plan->add_option("--config", config_path, "INI config file; flags override its values");
    plan->add_option("--roster", opt_roster, "Roster CSV");
    plan->add_option("--pathloss", opt_pathloss, "Path-loss CSV");
    plan->add_option("--outdir", opt_outdir, "Output directory");
    plan->add_option("--k", opt_k, "Cluster count");
    plan->add_option("--capacity", opt_capacity, "Max nodes per cluster (default ceil(n/k))");
    plan->add_option("--dimension", opt_dimension, "Embedding dimension (default k)");
    plan->add_option("--seed", opt_seed, "RNG seed");
    plan->add_option("--restarts", opt_restarts, "k-means restarts");
    plan->add_option("--max-iters", opt_max_iters, "Iteration limit");
    plan->add_option("--tol", opt_tol, "Centroid movement tolerance");
    plan->add_option("--assign-mode", opt_assign_mode, "Assignment mode: exact | greedy");
    plan->add_flag("--no-lower-bound", opt_no_lower_bound,
                   "Drop the per-cluster minimum size floor(n/k)");
    plan->add_option("--sim-lo", opt_sim_lo, "Target similarity at the lowest path loss");
    plan->add_option("--sim-hi", opt_sim_hi, "Target similarity at the usable-range edge");
    plan->add_option("--pl-min-db", opt_pl_min, "Kernel PL_min override, dB");
    plan->add_option("--tx-power-dbm", plan_budget.tx_power_dbm, "Peak output power, dBm");
    plan->add_option("--tx-gain-dbi", plan_budget.tx_gain_dbi, "Tx antenna gain, dBi");
    plan->add_option("--rx-gain-dbi", plan_budget.rx_gain_dbi, "Rx antenna gain, dBi");
    plan->add_option("--system-losses-db", plan_budget.system_losses_db, "System losses, dB");
    plan->add_option("--rx-sensitivity-dbm", plan_budget.rx_sensitivity_dbm,
                     "Receiver sensitivity, dBm");
    plan->add_option("--link-margin-db", plan_budget.link_margin_db, "Link margin, dB");
    plan->add_option("--dump-eigenvalues", eigenvalues_out,
                     "Write the retained Laplacian eigenvalues to this CSV, one per line");

    // ---- report ---------------------------------------------------------
    auto* report = app.add_subcommand("report", "Re-render heatmaps from saved matrices");
    std::string report_dir;
    report->add_option("--outdir", report_dir, "Directory holding the saved matrix CSVs")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            synth_cfg.n_nodes = static_cast<meshplan::Index>(synth_nodes);
            return run_synth(synth_cfg, roster_out, pathloss_out);
        }
        if (budget->parsed()) return run_budget(budget_params);
        if (report->parsed()) {
            meshplan::rerender_heatmaps(report_dir);
            std::cout << "re-rendered heatmaps in " << report_dir << '\n';
            return meshplan::exit_code::ok;
        }

        // plan: config file first, then every flag that was given wins.
        meshplan::PlanConfig cfg;
        if (!config_path.empty()) cfg = meshplan::parse_plan_config(config_path);
        if (plan->count("--roster")) cfg.roster_path = opt_roster;
        if (plan->count("--pathloss")) cfg.pathloss_path = opt_pathloss;
        if (plan->count("--outdir")) cfg.output_dir = opt_outdir;
        if (plan->count("--k")) cfg.k = opt_k;
        if (plan->count("--capacity")) cfg.capacity = opt_capacity;
        if (plan->count("--dimension")) cfg.dimension = opt_dimension;
        if (plan->count("--seed")) cfg.seed = opt_seed;
        if (plan->count("--restarts")) cfg.restarts = opt_restarts;
        if (plan->count("--max-iters")) cfg.max_iters = opt_max_iters;
        if (plan->count("--tol")) cfg.tol = opt_tol;
        if (plan->count("--assign-mode")) cfg.assign_mode = meshplan::parse_assign_mode(opt_assign_mode);
        if (plan->count("--no-lower-bound")) cfg.enforce_lower_bound = false;
        if (plan->count("--sim-lo")) cfg.sim_lo = opt_sim_lo;
        if (plan->count("--sim-hi")) cfg.sim_hi = opt_sim_hi;
        if (plan->count("--pl-min-db")) cfg.pl_min_db = opt_pl_min;
        if (plan->count("--tx-power-dbm")) cfg.budget.tx_power_dbm = plan_budget.tx_power_dbm;
        if (plan->count("--tx-gain-dbi")) cfg.budget.tx_gain_dbi = plan_budget.tx_gain_dbi;
        if (plan->count("--rx-gain-dbi")) cfg.budget.rx_gain_dbi = plan_budget.rx_gain_dbi;
        if (plan->count("--system-losses-db"))
            cfg.budget.system_losses_db = plan_budget.system_losses_db;
        if (plan->count("--rx-sensitivity-dbm"))
            cfg.budget.rx_sensitivity_dbm = plan_budget.rx_sensitivity_dbm;
        if (plan->count("--link-margin-db"))
            cfg.budget.link_margin_db = plan_budget.link_margin_db;

        const meshplan::PlanReport result = meshplan::run_plan(cfg);
        if (!eigenvalues_out.empty()) {
            std::ofstream out(eigenvalues_out, std::ios::binary);
            if (!out) throw meshplan::IngestError("cannot write file: " + eigenvalues_out);
            for (meshplan::Index i = 0; i < result.embedding.eigenvalues.size(); ++i)
                out << meshplan::csv::format_number(result.embedding.eigenvalues(i)) << '\n';
        }
        std::cout << summary_text(result);
        return meshplan::exit_code::ok;
    } catch (const std::exception& e) {
        std::cerr << "meshplan: " << e.what() << '\n';
        return meshplan::exit_code_for(e);
    }
}
