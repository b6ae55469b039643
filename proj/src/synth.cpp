#include "meshplan/synth.hpp"

#include "meshplan/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace meshplan {

namespace {

constexpr double speed_of_light_m_s = 299792458.0;
constexpr double meters_per_degree = 111320.0;  // equatorial approximation
constexpr double min_separation_m = 1.0;
constexpr int max_placement_attempts = 1000;

std::string node_id(Index i, Index n)
{
    int width = 1;
    for (Index v = n; v >= 10; v /= 10) ++width;
    if (width < 3) width = 3;
    std::string digits = std::to_string(i + 1);
    return "N" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
}

}  // namespace

void validate(const SynthConfig& cfg)
{
    if (cfg.n_nodes < 2) throw std::invalid_argument("synth: n_nodes must be >= 2");
    if (!(cfg.frequency_hz > 0.0)) throw std::invalid_argument("synth: frequency_hz must be > 0");
    if (cfg.path_loss_exponent < 2.0)
        throw std::invalid_argument("synth: path_loss_exponent must be >= 2");
    if (cfg.foliage_db_per_m < 0.0)
        throw std::invalid_argument("synth: foliage_db_per_m must be >= 0");
    if (cfg.foliage_fraction < 0.0 || cfg.foliage_fraction > 1.0)
        throw std::invalid_argument("synth: foliage_fraction must be in [0, 1]");
    if (cfg.shadowing_sigma_db < 0.0)
        throw std::invalid_argument("synth: shadowing_sigma_db must be >= 0");
    if (!(cfg.region_width_m > 0.0) || !(cfg.region_height_m > 0.0))
        throw std::invalid_argument("synth: degenerate region (zero area)");
}

double reference_loss_db(double frequency_hz)
{
    return 20.0 * std::log10(4.0 * std::numbers::pi * frequency_hz / speed_of_light_m_s);
}

double log_distance_loss_db(const SynthConfig& cfg, double distance_m)
{
    const double d = std::max(distance_m, 1.0);
    return reference_loss_db(cfg.frequency_hz) +
           10.0 * cfg.path_loss_exponent * std::log10(d) +
           cfg.foliage_db_per_m * cfg.foliage_fraction * distance_m;
}

std::pair<NodeRoster, RawPathLoss> synth_scenario(const SynthConfig& cfg)
{
    validate(cfg);
    const Index n = cfg.n_nodes;
    Rng rng(cfg.seed);

    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> y(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        int attempt = 0;
        while (true) {
            const double xi = rng.uniform(0.0, cfg.region_width_m);
            const double yi = rng.uniform(0.0, cfg.region_height_m);
            bool clear = true;
            for (Index j = 0; j < i; ++j) {
                const double dx = xi - x[static_cast<std::size_t>(j)];
                const double dy = yi - y[static_cast<std::size_t>(j)];
                if (dx * dx + dy * dy < min_separation_m * min_separation_m) {
                    clear = false;
                    break;
                }
            }
            if (clear) {
                x[static_cast<std::size_t>(i)] = xi;
                y[static_cast<std::size_t>(i)] = yi;
                break;
            }
            if (++attempt >= max_placement_attempts)
                throw std::invalid_argument(
                    "synth: cannot place " + std::to_string(n) + " nodes with " +
                    std::to_string(min_separation_m) + " m separation in the region");
        }
    }

    std::vector<NodeRecord> records;
    records.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        NodeRecord rec;
        rec.id = node_id(i, n);
        rec.latitude = y[static_cast<std::size_t>(i)] / meters_per_degree;
        rec.longitude = x[static_cast<std::size_t>(i)] / meters_per_degree;
        records.push_back(std::move(rec));
    }

    Matrix values = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dx = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            const double dy = y[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(j)];
            const double d = std::sqrt(dx * dx + dy * dy);
            double loss = log_distance_loss_db(cfg, d);
            if (cfg.shadowing_sigma_db > 0.0)
                loss += rng.normal(0.0, cfg.shadowing_sigma_db);
            values(i, j) = std::max(loss, 0.0);
        }
    }

    return {NodeRoster(std::move(records)), RawPathLoss{std::move(values)}};
}

}  // namespace meshplan
