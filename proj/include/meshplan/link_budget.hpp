#pragma once

#include "meshplan/types.hpp"

#include <stdexcept>

namespace meshplan {

/// Hardware and waveform parameters of the link budget. Losses carry
/// their own sign (e.g. -11.62 dB) and are added, never subtracted.
struct LinkBudgetParams {
    double tx_power_dbm = 30.00;
    double tx_gain_dbi = 6.00;
    double rx_gain_dbi = 6.00;
    double system_losses_db = -11.62;     // cable/connector/other, <= 0
    double rx_sensitivity_dbm = -113.41;  // minimum receiver sensitivity
    double link_margin_db = 0.0;          // >= 0
};

struct LinkBudgetResult {
    double pl_max_db = 0.0;  // maximum tolerable path loss
};

inline void validate(const LinkBudgetParams& p)
{
    if (p.link_margin_db < 0.0)
        throw std::invalid_argument("link budget: link_margin_db must be >= 0");
    if (p.system_losses_db > 0.0)
        throw std::invalid_argument("link budget: system_losses_db must be <= 0");
    if (!(p.rx_sensitivity_dbm < p.tx_power_dbm))
        throw std::invalid_argument("link budget: rx_sensitivity_dbm must be below tx_power_dbm");
}

/// Maximum tolerable path loss for the given hardware:
/// P_t + G_t + G_r + losses - sensitivity - margin.
inline LinkBudgetResult compute_pl_max(const LinkBudgetParams& p)
{
    validate(p);
    return {p.tx_power_dbm + p.tx_gain_dbi + p.rx_gain_dbi + p.system_losses_db -
            p.rx_sensitivity_dbm - p.link_margin_db};
}

/// A link closes iff its path loss does not exceed pl_max (boundary
/// inclusive); a missing path never closes.
inline bool is_usable(double pl_db, const LinkBudgetResult& budget)
{
    if (is_no_path(pl_db)) return false;
    return pl_db <= budget.pl_max_db;
}

}  // namespace meshplan
