#include "ntnharq/linkbudget.hpp"

#include <cmath>

#include "ntnharq/errors.hpp"

namespace ntnharq::linkbudget {

void LinkBudgetParams::validate() const {
    if (!(bandwidth_hz > 0.0) || !(carrier_ghz > 0.0)) {
        throw InvalidInput("bandwidth and carrier must be positive");
    }
    if (loss_atm_db < 0.0 || loss_shadow_db < 0.0 || loss_scint_db < 0.0 || loss_polar_db < 0.0) {
        throw InvalidInput("loss terms must be >= 0 dB");
    }
}

double fspl_db(double carrier_ghz, double distance_m) {
    if (!(carrier_ghz > 0.0) || !(distance_m > 0.0)) {
        throw InvalidInput("fspl needs positive carrier and distance");
    }
    return 32.45 + 20.0 * std::log10(carrier_ghz) + 20.0 * std::log10(distance_m);
}

double snr_db(const LinkBudgetParams& p, double distance_m) {
    p.validate();
    const double eirp_dbw = p.eirp_dbm - 30.0;
    const double losses = fspl_db(p.carrier_ghz, distance_m) + p.loss_atm_db + p.loss_shadow_db +
                          p.loss_scint_db + p.loss_polar_db;
    return eirp_dbw + p.g_over_t_db - kBoltzmannDbw - losses - 10.0 * std::log10(p.bandwidth_hz);
}

}  // namespace ntnharq::linkbudget
