#pragma once

namespace ntnharq::linkbudget {

/// Boltzmann constant in dBW/Hz/K.
inline constexpr double kBoltzmannDbw = -228.6;

/// Uplink budget terms. Defaults are the IoT-NTN evaluation settings
/// (23 dBm UE, 180 kHz, S-band at 2 GHz).
struct LinkBudgetParams {
    double eirp_dbm = 23.0;
    double g_over_t_db = -4.9;
    double bandwidth_hz = 180e3;
    double carrier_ghz = 2.0;
    double loss_atm_db = 0.07;
    double loss_shadow_db = 3.0;
    double loss_scint_db = 2.2;
    double loss_polar_db = 0.0;

    void validate() const;
};

/// 32.45 + 20 log10(f_GHz) + 20 log10(d_m)
double fspl_db(double carrier_ghz, double distance_m);

double snr_db(const LinkBudgetParams& params, double distance_m);

}  // namespace ntnharq::linkbudget
