#pragma once

#include <vector>

#include "ntnharq/types.hpp"

namespace ntnharq::harq {

/// Parameters of one HARQ cycle, all durations in subframes.
///
/// `rep_pdsch` and `rep_pusch` hold either a single value (every TB uses
/// the same repetition count) or one entry per TB position.
struct CycleParams {
    int n_tbphc = 1;
    int rep_pdcch = 1;
    std::vector<int> rep_pdsch{1};
    std::vector<int> rep_pusch{1};
    int rep_pucch = 1;
    int n_switch = 1;
    int n_dg2d = 1;
    int dd2a_min = 3;
    int ug2d_min = 3;
    int n_bundle = 1;
    GrantMode grant_mode = GrantMode::STBG;
    Bundling bundling = Bundling::None;

    /// Repetitions of TB `j` (1-based) on the data channel of `dir`.
    int data_reps(Direction dir, int j) const;
    int pdsch_reps(int j) const { return data_reps(Direction::DL, j); }
    int pusch_reps(int j) const { return data_reps(Direction::UL, j); }
    bool uniform(Direction dir) const;

    /// Sum of data repetitions over TB positions [first, last].
    int data_reps_sum(Direction dir, int first, int last) const;

    /// Number of PDCCH blocks per cycle: one per TB for STBG, one for MTBG.
    int grant_blocks() const { return grant_mode == GrantMode::STBG ? n_tbphc : 1; }
    /// Number of PUCCH blocks per cycle (bundles when ACK bundling is on).
    int ack_blocks() const;

    void validate() const;
    void validate(Direction dir) const;
};

/// Per-TB delays of one cycle: n_DD2A,j (DL) or n_UG2D,j (UL), j = 1..N.
struct DelayPlan {
    Direction direction = Direction::DL;
    std::vector<int> delays;
};

/// Fixed-delay placement: ACK j follows the last DL data SF by `fixed_delay + 1`;
/// UL data j starts `fixed_delay + 1` after the last SF of its grant.
int fixed_position(Direction dir, int anchor_sf, int fixed_delay);

/// Minimum HARQ processes to cover the stop-and-wait gap,
/// ceil(rtt / (rep_data * t_tb)).
int required_harq_count(double rtt_ms, double t_tb_ms, int rep_data);

// Variable delays. All take a 1-based TB position j in [1, n_tbphc].

/// Time left for TBs after j, plus ACKs of TBs before j, plus switching.
int dd2a_variable(const CycleParams& params, int j);

/// Grants after j (STBG only), plus UL data of TBs before j, plus switching.
int ug2d_variable(const CycleParams& params, int j);

/// Like dd2a_variable with `n_bundle` ACKs sharing one PUCCH block.
int dd2a_bundled(const CycleParams& params, int j);

/// Delays for every TB position, choosing the formula from `dir` and bundling.
DelayPlan delay_plan(const CycleParams& params, Direction dir);

/// HARQ processes needed to run `n_tbphc` TBs per cycle when the cycle must
/// also absorb the RTT and the BS ACK processing delay (`ack_proc_sf`).
int harq_for_tbphc(const CycleParams& params, double rtt_ms, double t_tb_ms,
                   int ack_proc_sf, Direction dir = Direction::DL);

}  // namespace ntnharq::harq
