#pragma once

#include "meshplan/roster.hpp"
#include "meshplan/types.hpp"

#include <cstdint>
#include <utility>

namespace meshplan {

/// Synthetic scenario parameters. The loss law is log-distance plus a
/// per-meter foliage attenuation over a fixed fraction of each link.
struct SynthConfig {
    Index n_nodes = 155;
    double region_width_m = 8000.0;
    double region_height_m = 8000.0;
    double frequency_hz = 925e6;
    double path_loss_exponent = 3.0;
    double foliage_db_per_m = 0.18;
    double foliage_fraction = 0.05;   // fraction of each link length treated as foliated
    double shadowing_sigma_db = 4.0;  // per-direction noise, makes the raw matrix non-reciprocal
    std::uint64_t seed = 1;
};

void validate(const SynthConfig& cfg);

/// Free-space loss at 1 m reference distance: 20*log10(4*pi*f/c).
double reference_loss_db(double frequency_hz);

/// Deterministic part of the loss law at the given distance (>= 1 m
/// effective; shorter links clamp to the reference loss).
double log_distance_loss_db(const SynthConfig& cfg, double distance_m);

/// Node positions uniform in the region and a full directional loss
/// matrix. Same seed, same bytes. Throws on a degenerate region or when
/// the minimum node separation cannot be honored.
std::pair<NodeRoster, RawPathLoss> synth_scenario(const SynthConfig& cfg);

}  // namespace meshplan
