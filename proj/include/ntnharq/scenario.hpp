#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ntnharq/bler.hpp"
#include "ntnharq/geometry.hpp"
#include "ntnharq/harq.hpp"
#include "ntnharq/linkbudget.hpp"
#include "ntnharq/metrics.hpp"
#include "ntnharq/scheduler.hpp"
#include "ntnharq/types.hpp"

namespace ntnharq::scenario {

enum class Protocol { LTEM, NBIoT };
std::string_view to_string(Protocol p);

/// Ordered `section.key = value` pairs as read from a profile file.
/// Later assignments to the same key replace earlier ones in place.
class KeyValues {
public:
    static KeyValues parse(std::string_view text);
    static KeyValues load(const std::filesystem::path& path);

    void set(const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    std::string to_text() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct MonteCarloSpec {
    int n_cycles = 10000;
    std::uint64_t seed = 1;
    std::vector<double> bler_per_attempt{0.0};
};

struct ScenarioConfig {
    std::string name = "scenario";
    geometry::OrbitGeometry geometry;
    std::optional<double> rtt_override_ms;
    linkbudget::LinkBudgetParams link;
    double snr_resolution_db = 0.1;  // operating SNR is rounded to this step
    Protocol protocol = Protocol::LTEM;
    int tbs_bits = 504;
    double target_bler = 0.1;
    double t_tb_ms = 1.0;
    Direction direction = Direction::UL;
    ScheduleMode mode = ScheduleMode::ProposedVariable;
    harq::CycleParams cycle;
    int rep_data = 0;  // 0: pick from the BLER table
    int n_tbphc = 0;   // 0: largest value the HARQ budget allows
    int max_harq = 8;
    int n_a2g = 0;
    double proc_efficiency_mops_per_mw = 144.0;
    double op_rate_per_s = 1000.0;
    double target_gain_pct = 28.0;
    std::string bler_table;
    std::optional<MonteCarloSpec> monte_carlo;
};

/// Protocol defaults first, then every other key in file order.
/// Unknown keys and malformed values raise ConfigError.
ScenarioConfig build_config(const KeyValues& kv);

struct ScenarioResult {
    std::string scenario_id;
    ScenarioConfig config;
    double slant_range_km = 0.0;
    double rtt_ms = 0.0;
    double snr_db = 0.0;  // operating SNR after rounding
    int n_rep = 0;
    int n_tbphc = 0;
    int cycle_length = 0;
    double baseline_throughput_bps = 0.0;
    metrics::MetricsReport report;
    std::optional<scheduler::MonteCarloResult> monte_carlo;
    bool infeasible = false;
};

/// Cycle parameters for `mode` at the given data repetitions, before
/// N_TBPHC is chosen.
harq::CycleParams cycle_for(const ScenarioConfig& config, int rep_data);

/// geometry -> link budget -> repetition selection -> schedule -> metrics.
/// Throws Infeasible when the link cannot reach the target BLER and
/// ConfigError when an explicit N_TBPHC exceeds the HARQ process budget.
ScenarioResult run_scenario(const ScenarioConfig& config, const bler::BlerTable& table);

struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

/// Parses `key=v1,v2,...`.
SweepAxis parse_axis(std::string_view spec);

/// Cartesian product of the axes, first axis outermost. Infeasible cells
/// are returned with `infeasible` set.
std::vector<ScenarioResult> sweep(const KeyValues& base, const std::vector<SweepAxis>& axes,
                                  const bler::BlerTable& table);

std::string csv_header();
std::string csv_row(const ScenarioResult& result);
std::string to_csv(const std::vector<ScenarioResult>& results);

struct CalibrationPoint {
    int rep_pdcch = 0;
    int n_a2g = 0;
    double gain_pct = 0.0;
};

struct CalibrationResult {
    CalibrationPoint best;
    double target_gain_pct = 0.0;
    std::vector<CalibrationPoint> grid;
};

/// Searches rep_pdcch in [1, 8] x N_A2G in [0, 4] for the pair whose
/// proposed-vs-legacy gain is closest to the profile's target.
CalibrationResult calibrate(const KeyValues& profile, const bler::BlerTable& table);

/// Timeline of the configured scenario (legacy attempts may contain conflicts).
struct ScenarioTimeline {
    scheduler::SubframeTimeline timeline;
    scheduler::ConflictReport conflicts;
    double rtt_ms = 0.0;
};

ScenarioTimeline scenario_timeline(const ScenarioConfig& config, const bler::BlerTable& table);

/// One row per channel, one column per subframe.
std::string render_text(const scheduler::SubframeTimeline& timeline,
                        const scheduler::ConflictReport& conflicts = {});
std::string render_svg(const scheduler::SubframeTimeline& timeline,
                       const scheduler::ConflictReport& conflicts = {});

}  // namespace ntnharq::scenario
