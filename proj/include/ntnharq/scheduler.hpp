#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ntnharq/harq.hpp"
#include "ntnharq/types.hpp"

namespace ntnharq::scheduler {

enum class Activity { RxPDCCH, RxPDSCH, TxPUCCH, TxPUSCH, Switch, Idle };

std::string_view to_string(Activity a);
Activity activity_from_string(std::string_view s);
bool is_rx(Activity a);
bool is_tx(Activity a);

struct SubframeActivity {
    Activity kind = Activity::Idle;
    std::optional<int> tb_index;  // 1-based position within the cycle
    std::optional<int> harq_id;

    friend bool operator==(const SubframeActivity&, const SubframeActivity&) = default;
};

enum class Perspective { UE, BS };
std::string_view to_string(Perspective p);

/// One subframe. Empty means idle. A feasible UE subframe holds at most one
/// activity; the BS side may transmit and receive in the same subframe.
struct Subframe {
    std::vector<SubframeActivity> activities;

    bool idle() const { return activities.empty(); }
    bool has(Activity kind) const;

    friend bool operator==(const Subframe&, const Subframe&) = default;
};

struct SubframeTimeline {
    Perspective perspective = Perspective::UE;
    int first_sf = 0;  // index of slots[0]
    std::vector<Subframe> slots;
    std::vector<int> cycle_boundaries;  // slot offsets, first 0, last slots.size()

    int size() const { return static_cast<int>(slots.size()); }
    const Subframe& at(int sf) const { return slots.at(static_cast<std::size_t>(sf - first_sf)); }
    int count(Activity kind) const;

    friend bool operator==(const SubframeTimeline&, const SubframeTimeline&) = default;
};

enum class ConflictKind { Overlap, MissingSwitch, MinDelay };
std::string_view to_string(ConflictKind k);

struct Conflict {
    ConflictKind kind = ConflictKind::Overlap;
    int sf_index = 0;
    Activity first = Activity::Idle;
    Activity second = Activity::Idle;
    std::vector<int> tb_indices;
};

struct ConflictReport {
    std::vector<Conflict> conflicts;
    bool empty() const { return conflicts.empty(); }
    int count(ConflictKind kind) const;
};

/// Outcome of a fixed-delay attempt. `timeline` holds the attempted layout,
/// double bookings included; the schedule is usable iff `report` is empty.
struct LegacyCycle {
    SubframeTimeline timeline;
    ConflictReport report;
    bool feasible() const { return report.empty(); }
};

/// Lays out `n_tbphc` TBs with the fixed delays dd2a_min / ug2d_min.
LegacyCycle build_legacy_cycle(const harq::CycleParams& params, Direction dir);

/// Lays out one conflict-free cycle using the variable per-TB delays.
/// Throws MinDelayViolation when a TB's delay is below the UE minimum.
SubframeTimeline build_proposed_cycle(const harq::CycleParams& params, Direction dir);

/// Per-TB delays realized by build_proposed_cycle (formula delay plus the
/// processing-time padding).
harq::DelayPlan realized_delays(const harq::CycleParams& params, Direction dir);

/// Checks HD-FDD exclusivity, switching room (the timeline is treated as
/// repeating) and the minimum DD2A/UG2D separations.
ConflictReport validate(const SubframeTimeline& timeline, const harq::CycleParams& params);

/// Base-station view: DL activity moves ceil(rtt/2) subframes earlier, UL
/// activity ceil(rtt/2) later. Switch markers stay at their UE positions.
SubframeTimeline bs_view(const SubframeTimeline& timeline, double rtt_ms);

/// Concatenates `n` copies of a single-cycle timeline.
SubframeTimeline repeat_cycles(const SubframeTimeline& cycle, int n);

/// `index,perspective,activity,tb_index,harq_id` lines; idle slots print one
/// `Idle` line, double-booked slots one line per activity.
std::string export_csv(const SubframeTimeline& timeline);

/// Inverse of export_csv.
SubframeTimeline import_csv(std::string_view text);

struct MonteCarloOptions {
    ScheduleMode mode = ScheduleMode::ProposedVariable;
    std::vector<double> bler_per_attempt{0.0};
    int n_cycles = 1000;
    std::uint64_t seed = 1;
    double tbs_bits = 504.0;
    double t_tb_s = 1e-3;
};

struct MonteCarloResult {
    double goodput_bps = 0.0;
    double retransmission_rate = 0.0;  // retransmissions / attempts
    long long attempts = 0;
    long long successes = 0;
    long long pending = 0;  // TBs still awaiting retransmission at the end

    friend bool operator==(const MonteCarloResult&, const MonteCarloResult&) = default;
};

/// Repeats the cycle `n_cycles` times. Each TB slot carries either a pending
/// retransmission (oldest first) or a new TB; attempt k fails with
/// probability bler_per_attempt[min(k, size-1)].
MonteCarloResult monte_carlo_goodput(const harq::CycleParams& params, Direction dir,
                                     const MonteCarloOptions& options);

}  // namespace ntnharq::scheduler
