#pragma once

#include "ntnharq/harq.hpp"
#include "ntnharq/types.hpp"

namespace ntnharq::metrics {

// Arithmetic operations per evaluation of each variable-delay formula
// (subtractions, multiplications, additions, division, floor).
inline constexpr int kOpsDd2a = 6;
inline constexpr int kOpsUg2d = 6;
inline constexpr int kOpsDd2aBundled = 8;

struct MetricsReport {
    double suf = 0.0;
    double throughput_bps = 0.0;
    double gain_vs_baseline = 0.0;  // fraction, 0.28 == 28 %
    int required_harq = 0;
    double power_cost_w = 0.0;
};

struct ProcessorProfile {
    double efficiency_mops_per_mw = 144.0;
    double op_rate_per_s = 1000.0;  // one evaluation per subframe
    double op_count = kOpsDd2a;
};

/// N_data / (n_rep * N_HC)
double suf_generic(int n_data, int n_rep, int n_hc);

/// Cycle length in subframes predicted by the closed form for `mode`.
/// LegacyFixed requires n_tbphc == 1.
int cycle_length_closed_form(const harq::CycleParams& params, Direction dir, ScheduleMode mode);

/// n_tbphc / cycle_length_closed_form(...)
double suf_closed_form(const harq::CycleParams& params, Direction dir, ScheduleMode mode);

/// suf * tbs / t_tb
double throughput_bps(double suf, double tbs_bits, double t_tb_s);

/// Power drawn by evaluating the delay formula `op_rate` times per second.
double delay_power_w(const ProcessorProfile& profile);

/// Op count of the delay formula used for `dir` and `bundling`.
int delay_op_count(Direction dir, Bundling bundling);

}  // namespace ntnharq::metrics
