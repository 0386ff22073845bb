#include "ntnharq/metrics.hpp"

#include <algorithm>

#include "ntnharq/errors.hpp"

namespace ntnharq::metrics {

double suf_generic(int n_data, int n_rep, int n_hc) {
    if (n_data <= 0 || n_rep <= 0 || n_hc <= 0) {
        throw InvalidInput("suf_generic needs positive arguments");
    }
    if (static_cast<long long>(n_rep) * n_hc < n_data) {
        throw InvalidInput("more data subframes than the cycle holds");
    }
    return static_cast<double>(n_data) / (static_cast<double>(n_rep) * n_hc);
}

int cycle_length_closed_form(const harq::CycleParams& p, Direction dir, ScheduleMode mode) {
    p.validate(dir);
    const int n = p.n_tbphc;
    if (mode == ScheduleMode::LegacyFixed) {
        if (n != 1) {
            throw InvalidInput("fixed-delay closed form covers one TB per cycle");
        }
        if (dir == Direction::DL) {
            return p.rep_pdcch + p.pdsch_reps(1) + p.rep_pucch + p.n_dg2d + p.dd2a_min + p.n_switch;
        }
        return p.rep_pdcch + p.pusch_reps(1) + p.ug2d_min + p.n_switch;
    }
    if (dir == Direction::DL) {
        const int acks = p.ack_blocks();
        return p.grant_blocks() * p.rep_pdcch + p.n_dg2d + p.data_reps_sum(Direction::DL, 1, n) + p.rep_pucch +
               std::max(p.dd2a_min, (acks - 1) * p.rep_pucch) + 2 * p.n_switch;
    }
    return p.rep_pdcch + std::max(p.ug2d_min, (p.grant_blocks() - 1) * p.rep_pdcch) +
           p.data_reps_sum(Direction::UL, 1, n) + 2 * p.n_switch;
}

double suf_closed_form(const harq::CycleParams& p, Direction dir, ScheduleMode mode) {
    return static_cast<double>(p.n_tbphc) / cycle_length_closed_form(p, dir, mode);
}

double throughput_bps(double suf, double tbs_bits, double t_tb_s) {
    if (!(t_tb_s > 0.0)) {
        throw InvalidInput("t_tb must be positive");
    }
    return suf * tbs_bits / t_tb_s;
}

double delay_power_w(const ProcessorProfile& profile) {
    if (!(profile.efficiency_mops_per_mw > 0.0) || profile.op_rate_per_s < 0.0 || profile.op_count < 0.0) {
        throw InvalidInput("processor profile needs positive efficiency and non-negative rates");
    }
    // ops/s divided by (1e6 ops/s per mW) gives mW.
    const double milliwatts = profile.op_rate_per_s * profile.op_count / (profile.efficiency_mops_per_mw * 1e6);
    return milliwatts * 1e-3;
}

int delay_op_count(Direction dir, Bundling bundling) {
    if (dir == Direction::UL) {
        return kOpsUg2d;
    }
    return bundling == Bundling::Bundled ? kOpsDd2aBundled : kOpsDd2a;
}

}  // namespace ntnharq::metrics
