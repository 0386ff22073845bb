#include "ntnharq/harq.hpp"

#include <cmath>
#include <string>

#include "ntnharq/errors.hpp"

namespace ntnharq::harq {

namespace {

// Ceiling that ignores floating-point residue just above an integer.
int ceil_count(double x) {
    return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}

void check_position(const CycleParams& p, int j) {
    if (j < 1 || j > p.n_tbphc) {
        throw InvalidInput("TB position " + std::to_string(j) + " outside [1, " + std::to_string(p.n_tbphc) + "]");
    }
}

void check_reps(const std::vector<int>& reps, int n_tbphc, const char* name) {
    if (reps.size() != 1 && reps.size() != static_cast<std::size_t>(n_tbphc)) {
        throw InvalidInput(std::string(name) + " must hold 1 or n_tbphc entries");
    }
    for (int r : reps) {
        if (r < 1) {
            throw InvalidInput(std::string(name) + " entries must be >= 1");
        }
    }
}

}  // namespace

int CycleParams::data_reps(Direction dir, int j) const {
    const auto& reps = dir == Direction::DL ? rep_pdsch : rep_pusch;
    if (reps.size() == 1) {
        return reps.front();
    }
    return reps.at(static_cast<std::size_t>(j - 1));
}

bool CycleParams::uniform(Direction dir) const {
    const auto& reps = dir == Direction::DL ? rep_pdsch : rep_pusch;
    for (int r : reps) {
        if (r != reps.front()) {
            return false;
        }
    }
    return true;
}

int CycleParams::data_reps_sum(Direction dir, int first, int last) const {
    int sum = 0;
    for (int k = first; k <= last; ++k) {
        sum += data_reps(dir, k);
    }
    return sum;
}

int CycleParams::ack_blocks() const {
    if (bundling == Bundling::Bundled) {
        return (n_tbphc + n_bundle - 1) / n_bundle;
    }
    return n_tbphc;
}

void CycleParams::validate() const {
    if (n_tbphc < 1) {
        throw InvalidInput("n_tbphc must be >= 1");
    }
    if (rep_pdcch < 1 || rep_pucch < 1) {
        throw InvalidInput("control repetitions must be >= 1");
    }
    check_reps(rep_pdsch, n_tbphc, "rep_pdsch");
    check_reps(rep_pusch, n_tbphc, "rep_pusch");
    if (n_bundle < 1) {
        throw InvalidInput("n_bundle must be >= 1");
    }
    if (n_switch < 0 || n_dg2d < 0 || dd2a_min < 0 || ug2d_min < 0) {
        throw InvalidInput("delays must be non-negative");
    }
}

void CycleParams::validate(Direction dir) const {
    validate();
    if (dir == Direction::UL && bundling == Bundling::Bundled) {
        throw InvalidInput("ACK bundling applies to downlink cycles only");
    }
}

int fixed_position(Direction, int anchor_sf, int fixed_delay) {
    // Same arithmetic in both directions; the anchor differs (last DL data
    // SF vs last UL grant SF).
    return anchor_sf + fixed_delay + 1;
}

int required_harq_count(double rtt_ms, double t_tb_ms, int rep_data) {
    if (!(rtt_ms > 0.0) || !(t_tb_ms > 0.0) || rep_data < 1) {
        throw InvalidInput("required_harq_count needs positive inputs");
    }
    return ceil_count(rtt_ms / (rep_data * t_tb_ms));
}

int dd2a_variable(const CycleParams& p, int j) {
    check_position(p, j);
    if (p.bundling != Bundling::None) {
        throw InvalidInput("dd2a_variable expects unbundled ACKs; use dd2a_bundled");
    }
    return p.data_reps_sum(Direction::DL, j + 1, p.n_tbphc) + (j - 1) * p.rep_pucch + p.n_switch;
}

int ug2d_variable(const CycleParams& p, int j) {
    check_position(p, j);
    const int later_grants = p.grant_mode == GrantMode::STBG ? p.n_tbphc - j : 0;
    return later_grants * p.rep_pdcch + p.data_reps_sum(Direction::UL, 1, j - 1) + p.n_switch;
}

int dd2a_bundled(const CycleParams& p, int j) {
    check_position(p, j);
    if (p.bundling != Bundling::Bundled) {
        throw InvalidInput("dd2a_bundled expects bundled ACKs");
    }
    if (p.n_bundle < 1) {
        throw InvalidInput("n_bundle must be >= 1");
    }
    return p.data_reps_sum(Direction::DL, j + 1, p.n_tbphc) + ((j - 1) / p.n_bundle) * p.rep_pucch +
           p.n_switch;
}

DelayPlan delay_plan(const CycleParams& p, Direction dir) {
    p.validate(dir);
    DelayPlan plan{dir, {}};
    plan.delays.reserve(static_cast<std::size_t>(p.n_tbphc));
    for (int j = 1; j <= p.n_tbphc; ++j) {
        if (dir == Direction::UL) {
            plan.delays.push_back(ug2d_variable(p, j));
        } else if (p.bundling == Bundling::Bundled) {
            plan.delays.push_back(dd2a_bundled(p, j));
        } else {
            plan.delays.push_back(dd2a_variable(p, j));
        }
    }
    return plan;
}

int harq_for_tbphc(const CycleParams& p, double rtt_ms, double t_tb_ms, int ack_proc_sf, Direction dir) {
    p.validate();
    if (rtt_ms < 0.0 || !(t_tb_ms > 0.0) || ack_proc_sf < 0) {
        throw InvalidInput("harq_for_tbphc needs rtt >= 0, t_tb > 0, ack_proc >= 0");
    }
    const int n = p.n_tbphc;
    int busy_sf = 0;
    if (dir == Direction::DL) {
        busy_sf = p.rep_pdcch + p.n_dg2d + p.data_reps_sum(Direction::DL, 1, n) + n * p.rep_pucch;
    } else {
        busy_sf = p.rep_pdcch + p.data_reps_sum(Direction::UL, 1, n);
    }
    const double cycle_ms = t_tb_ms * busy_sf + 2.0 * p.n_switch * t_tb_ms;
    const double wait_ms = rtt_ms + ack_proc_sf * t_tb_ms;
    return ceil_count(n * (1.0 + wait_ms / cycle_ms));
}

}  // namespace ntnharq::harq
