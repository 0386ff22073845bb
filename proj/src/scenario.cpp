#include "ntnharq/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ntnharq/errors.hpp"

namespace ntnharq::scenario {

using scheduler::Activity;
using scheduler::SubframeTimeline;

std::string_view to_string(Protocol p) { return p == Protocol::LTEM ? "LTE-M" : "NB-IoT"; }

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size() && std::isfinite(d)) {
            return d;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected a number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long i = std::stoll(v, &used);
        if (used == v.size() && i >= -1000000000LL && i <= 1000000000LL) {
            return static_cast<int>(i);
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
}

int to_int_or_auto(const std::string& key, const std::string& v) {
    if (lower(v) == "auto") {
        return 0;
    }
    const int i = to_int(key, v);
    if (i < 1) {
        throw ConfigError(key + ": must be >= 1 or auto");
    }
    return i;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) {
        out.push_back(to_double(key, tok));
    }
    if (out.empty()) {
        throw ConfigError(key + ": empty list");
    }
    return out;
}

Protocol parse_protocol(const std::string& v) {
    const auto s = lower(v);
    if (s == "lte-m" || s == "ltem") return Protocol::LTEM;
    if (s == "nb-iot" || s == "nbiot") return Protocol::NBIoT;
    throw ConfigError("protocol: expected LTE-M or NB-IoT, got '" + v + "'");
}

ScheduleMode parse_mode(const std::string& v) {
    const auto s = lower(v);
    if (s == "legacy" || s == "legacyfixed") return ScheduleMode::LegacyFixed;
    if (s == "proposed" || s == "proposedvariable") return ScheduleMode::ProposedVariable;
    throw ConfigError("mode: expected legacy or proposed, got '" + v + "'");
}

std::string_view mode_name(ScheduleMode m) { return m == ScheduleMode::LegacyFixed ? "legacy" : "proposed"; }

Direction parse_direction(const std::string& v) {
    const auto s = lower(v);
    if (s == "ul") return Direction::UL;
    if (s == "dl") return Direction::DL;
    throw ConfigError("traffic.direction: expected UL or DL, got '" + v + "'");
}

geometry::Payload parse_payload(const std::string& v) {
    const auto s = lower(v);
    if (s == "transparent") return geometry::Payload::Transparent;
    if (s == "regenerative") return geometry::Payload::Regenerative;
    throw ConfigError("geometry.payload: expected transparent or regenerative, got '" + v + "'");
}

std::string_view payload_name(geometry::Payload p) {
    return p == geometry::Payload::Transparent ? "transparent" : "regenerative";
}

GrantMode parse_grant_mode(const std::string& v) {
    const auto s = lower(v);
    if (s == "stbg") return GrantMode::STBG;
    if (s == "mtbg") return GrantMode::MTBG;
    throw ConfigError("cycle.grant_mode: expected STBG or MTBG, got '" + v + "'");
}

Bundling parse_bundling(const std::string& v) {
    const auto s = lower(v);
    if (s == "none" || s == "off") return Bundling::None;
    if (s == "bundled" || s == "on") return Bundling::Bundled;
    throw ConfigError("cycle.bundling: expected none or bundled, got '" + v + "'");
}

void apply_protocol_defaults(ScenarioConfig& c) {
    if (c.protocol == Protocol::LTEM) {
        c.cycle.ug2d_min = 3;
        c.cycle.n_switch = 1;
        c.cycle.n_dg2d = 1;
        c.cycle.dd2a_min = 3;
        c.max_harq = 8;
        c.target_gain_pct = 28.0;
    } else {
        c.cycle.ug2d_min = 8;
        c.cycle.n_switch = 2;
        c.cycle.n_dg2d = 4;
        c.cycle.dd2a_min = 12;
        c.max_harq = 4;
        c.target_gain_pct = 31.0;
    }
}

MonteCarloSpec& mc(ScenarioConfig& c) {
    if (!c.monte_carlo) {
        c.monte_carlo.emplace();
    }
    return *c.monte_carlo;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"scenario.name", [](auto& c, auto&, auto& v) { c.name = v; }},
        {"geometry.altitude_km", [](auto& c, auto& k, auto& v) { c.geometry.altitude_km = to_double(k, v); }},
        {"geometry.service_elevation_deg",
         [](auto& c, auto& k, auto& v) { c.geometry.service_elevation_deg = to_double(k, v); }},
        {"geometry.feeder_elevation_deg",
         [](auto& c, auto& k, auto& v) { c.geometry.feeder_elevation_deg = to_double(k, v); }},
        {"geometry.payload", [](auto& c, auto&, auto& v) { c.geometry.payload = parse_payload(v); }},
        {"geometry.rtt_override_ms",
         [](auto& c, auto& k, auto& v) {
             if (lower(v) == "none") {
                 c.rtt_override_ms.reset();
             } else {
                 c.rtt_override_ms = to_double(k, v);
             }
         }},
        {"link.eirp_dbm", [](auto& c, auto& k, auto& v) { c.link.eirp_dbm = to_double(k, v); }},
        {"link.g_over_t_db", [](auto& c, auto& k, auto& v) { c.link.g_over_t_db = to_double(k, v); }},
        {"link.bandwidth_hz", [](auto& c, auto& k, auto& v) { c.link.bandwidth_hz = to_double(k, v); }},
        {"link.carrier_ghz", [](auto& c, auto& k, auto& v) { c.link.carrier_ghz = to_double(k, v); }},
        {"link.loss_atm_db", [](auto& c, auto& k, auto& v) { c.link.loss_atm_db = to_double(k, v); }},
        {"link.loss_shadow_db", [](auto& c, auto& k, auto& v) { c.link.loss_shadow_db = to_double(k, v); }},
        {"link.loss_scint_db", [](auto& c, auto& k, auto& v) { c.link.loss_scint_db = to_double(k, v); }},
        {"link.loss_polar_db", [](auto& c, auto& k, auto& v) { c.link.loss_polar_db = to_double(k, v); }},
        {"link.snr_resolution_db", [](auto& c, auto& k, auto& v) { c.snr_resolution_db = to_double(k, v); }},
        {"traffic.tbs_bits", [](auto& c, auto& k, auto& v) { c.tbs_bits = to_int(k, v); }},
        {"traffic.target_bler", [](auto& c, auto& k, auto& v) { c.target_bler = to_double(k, v); }},
        {"traffic.t_tb_ms", [](auto& c, auto& k, auto& v) { c.t_tb_ms = to_double(k, v); }},
        {"traffic.direction", [](auto& c, auto&, auto& v) { c.direction = parse_direction(v); }},
        {"mode", [](auto& c, auto&, auto& v) { c.mode = parse_mode(v); }},
        {"cycle.n_tbphc", [](auto& c, auto& k, auto& v) { c.n_tbphc = to_int_or_auto(k, v); }},
        {"cycle.rep_pdcch", [](auto& c, auto& k, auto& v) { c.cycle.rep_pdcch = to_int(k, v); }},
        {"cycle.rep_data", [](auto& c, auto& k, auto& v) { c.rep_data = to_int_or_auto(k, v); }},
        {"cycle.rep_pucch", [](auto& c, auto& k, auto& v) { c.cycle.rep_pucch = to_int(k, v); }},
        {"cycle.n_switch", [](auto& c, auto& k, auto& v) { c.cycle.n_switch = to_int(k, v); }},
        {"cycle.n_dg2d", [](auto& c, auto& k, auto& v) { c.cycle.n_dg2d = to_int(k, v); }},
        {"cycle.dd2a_min", [](auto& c, auto& k, auto& v) { c.cycle.dd2a_min = to_int(k, v); }},
        {"cycle.ug2d_min", [](auto& c, auto& k, auto& v) { c.cycle.ug2d_min = to_int(k, v); }},
        {"cycle.n_bundle", [](auto& c, auto& k, auto& v) { c.cycle.n_bundle = to_int(k, v); }},
        {"cycle.grant_mode", [](auto& c, auto&, auto& v) { c.cycle.grant_mode = parse_grant_mode(v); }},
        {"cycle.bundling", [](auto& c, auto&, auto& v) { c.cycle.bundling = parse_bundling(v); }},
        {"cycle.n_a2g", [](auto& c, auto& k, auto& v) { c.n_a2g = to_int(k, v); }},
        {"cycle.max_harq", [](auto& c, auto& k, auto& v) { c.max_harq = to_int(k, v); }},
        {"power.efficiency_mops_per_mw",
         [](auto& c, auto& k, auto& v) { c.proc_efficiency_mops_per_mw = to_double(k, v); }},
        {"power.op_rate_per_s", [](auto& c, auto& k, auto& v) { c.op_rate_per_s = to_double(k, v); }},
        {"bler.table", [](auto& c, auto&, auto& v) { c.bler_table = v; }},
        {"calibration.target_gain_pct", [](auto& c, auto& k, auto& v) { c.target_gain_pct = to_double(k, v); }},
        {"montecarlo.n_cycles", [](auto& c, auto& k, auto& v) { mc(c).n_cycles = to_int(k, v); }},
        {"montecarlo.seed",
         [](auto& c, auto& k, auto& v) { mc(c).seed = static_cast<std::uint64_t>(to_int(k, v)); }},
        {"montecarlo.bler_per_attempt", [](auto& c, auto& k, auto& v) { mc(c).bler_per_attempt = to_list(k, v); }},
    };
    return table;
}

// Everything run_scenario and scenario_timeline share.
struct Resolved {
    double slant_km = 0.0;
    double rtt_ms = 0.0;
    double snr_db = 0.0;
    int n_rep = 0;
    harq::CycleParams params;
};

double operating_snr(const ScenarioConfig& c, double slant_km) {
    const double raw = linkbudget::snr_db(c.link, slant_km * 1000.0);
    if (c.snr_resolution_db > 0.0) {
        // Divide by the step count so that e.g. -56 / 10 lands exactly on -5.6.
        const double steps = 1.0 / c.snr_resolution_db;
        return std::round(raw * steps) / steps;
    }
    return raw;
}

void check_config(const ScenarioConfig& c) {
    try {
        c.geometry.validate();
        c.link.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    if (c.tbs_bits < 1) throw ConfigError("traffic.tbs_bits must be >= 1");
    if (!(c.target_bler > 0.0 && c.target_bler < 1.0)) throw ConfigError("traffic.target_bler must lie in (0, 1)");
    if (!(c.t_tb_ms > 0.0)) throw ConfigError("traffic.t_tb_ms must be positive");
    if (c.max_harq < 1) throw ConfigError("cycle.max_harq must be >= 1");
    if (c.n_a2g < 0) throw ConfigError("cycle.n_a2g must be >= 0");
    if (c.rtt_override_ms && *c.rtt_override_ms < 0.0) throw ConfigError("geometry.rtt_override_ms must be >= 0");
    if (c.monte_carlo && c.monte_carlo->n_cycles < 1) throw ConfigError("montecarlo.n_cycles must be >= 1");
}

int harq_needed(const ScenarioConfig& c, const harq::CycleParams& p, double rtt_ms) {
    return harq::harq_for_tbphc(p, rtt_ms, c.t_tb_ms, c.n_a2g, c.direction);
}

Resolved resolve(const ScenarioConfig& c, const bler::BlerTable& table) {
    check_config(c);
    Resolved r;
    r.slant_km = geometry::slant_range_km(c.geometry.altitude_km, c.geometry.service_elevation_deg);
    r.rtt_ms = c.rtt_override_ms ? *c.rtt_override_ms : geometry::round_trip_time_ms(c.geometry);
    r.snr_db = operating_snr(c, r.slant_km);
    if (c.rep_data > 0) {
        r.n_rep = c.rep_data;
    } else {
        if (table.empty()) {
            throw ConfigError("no BLER table loaded and cycle.rep_data is auto");
        }
        r.n_rep = table.select_repetitions(c.tbs_bits, r.snr_db, c.target_bler);
    }
    r.params = cycle_for(c, r.n_rep);
    try {
        r.params.validate(c.direction);
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }

    if (c.mode == ScheduleMode::LegacyFixed) {
        r.params.n_tbphc = c.n_tbphc > 0 ? c.n_tbphc : 1;
        return r;
    }
    if (c.n_tbphc > 0) {
        r.params.n_tbphc = c.n_tbphc;
        const int need = harq_needed(c, r.params, r.rtt_ms);
        if (need > c.max_harq) {
            throw ConfigError("cycle.n_tbphc = " + std::to_string(c.n_tbphc) + " needs " + std::to_string(need) +
                              " HARQ processes by the HARQ-per-cycle sizing relation, above the maximum of " +
                              std::to_string(c.max_harq));
        }
        return r;
    }
    int best = 0;
    for (int n = 1; n <= 64; ++n) {
        r.params.n_tbphc = n;
        if (harq_needed(c, r.params, r.rtt_ms) > c.max_harq) {
            break;
        }
        best = n;
    }
    if (best == 0) {
        throw ConfigError("even one TB per cycle needs more than " + std::to_string(c.max_harq) +
                          " HARQ processes");
    }
    r.params.n_tbphc = best;
    return r;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    std::string s(buf);
    if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, s.front() == '-' ? 1 : 0);  // no negative zero
    }
    return s;
}

char tb_char(const scheduler::SubframeActivity& a) {
    if (!a.tb_index) {
        return '#';
    }
    const int i = *a.tb_index;
    if (i >= 1 && i <= 9) return static_cast<char>('0' + i);
    if (i >= 10 && i < 36) return static_cast<char>('a' + i - 10);
    return '+';
}

struct Lane {
    const char* label;
    Activity kind;
};

constexpr Lane kLanes[] = {{"PDCCH ", Activity::RxPDCCH},
                           {"PDSCH ", Activity::RxPDSCH},
                           {"PUCCH ", Activity::TxPUCCH},
                           {"PUSCH ", Activity::TxPUSCH},
                           {"switch", Activity::Switch}};

}  // namespace

KeyValues KeyValues::parse(std::string_view text) {
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const auto key = trim(std::string_view(body).substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        }
        kv.set(key, trim(std::string_view(body).substr(eq + 1)));
    }
    return kv;
}

KeyValues KeyValues::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void KeyValues::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

std::optional<std::string> KeyValues::get(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) {
            return v;
        }
    }
    return std::nullopt;
}

std::string KeyValues::to_text() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        out += k + " = " + v + "\n";
    }
    return out;
}

ScenarioConfig build_config(const KeyValues& kv) {
    ScenarioConfig c;
    if (const auto p = kv.get("protocol")) {
        c.protocol = parse_protocol(*p);
    }
    apply_protocol_defaults(c);
    const auto& table = setters();
    for (const auto& [key, value] : kv.entries()) {
        if (key == "protocol") {
            continue;
        }
        const auto it = table.find(key);
        if (it == table.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
        it->second(c, key, value);
    }
    return c;
}

harq::CycleParams cycle_for(const ScenarioConfig& config, int rep_data) {
    harq::CycleParams p = config.cycle;
    p.rep_pdsch = {rep_data};
    p.rep_pusch = {rep_data};
    p.n_tbphc = 1;
    return p;
}

ScenarioResult run_scenario(const ScenarioConfig& config, const bler::BlerTable& table) {
    const Resolved r = resolve(config, table);
    ScenarioResult out;
    out.scenario_id = config.name;
    out.config = config;
    out.slant_range_km = r.slant_km;
    out.rtt_ms = r.rtt_ms;
    out.snr_db = r.snr_db;
    out.n_rep = r.n_rep;
    out.n_tbphc = r.params.n_tbphc;

    const Direction dir = config.direction;
    if (config.mode == ScheduleMode::LegacyFixed) {
        const auto legacy = scheduler::build_legacy_cycle(r.params, dir);
        if (!legacy.feasible()) {
            throw ConfigError("fixed-delay schedule with " + std::to_string(r.params.n_tbphc) +
                              " TBs per cycle has HD-FDD conflicts");
        }
        out.cycle_length = legacy.timeline.size();
    } else {
        try {
            out.cycle_length = scheduler::build_proposed_cycle(r.params, dir).size();
        } catch (const MinDelayViolation& e) {
            throw ConfigError(e.what());
        }
    }

    const double t_tb_s = config.t_tb_ms * 1e-3;
    auto baseline = r.params;
    baseline.n_tbphc = 1;
    const double base_suf =
        1.0 / metrics::cycle_length_closed_form(baseline, dir, ScheduleMode::LegacyFixed);
    out.baseline_throughput_bps = metrics::throughput_bps(base_suf, config.tbs_bits, t_tb_s);

    auto& m = out.report;
    m.suf = static_cast<double>(r.params.n_tbphc) / out.cycle_length;
    m.throughput_bps = metrics::throughput_bps(m.suf, config.tbs_bits, t_tb_s);
    m.gain_vs_baseline = m.throughput_bps / out.baseline_throughput_bps - 1.0;
    m.required_harq = harq_needed(config, r.params, r.rtt_ms);
    if (config.mode == ScheduleMode::ProposedVariable) {
        metrics::ProcessorProfile prof;
        prof.efficiency_mops_per_mw = config.proc_efficiency_mops_per_mw;
        prof.op_rate_per_s = config.op_rate_per_s;
        prof.op_count = metrics::delay_op_count(dir, r.params.bundling);
        m.power_cost_w = metrics::delay_power_w(prof);
    }

    if (config.monte_carlo) {
        scheduler::MonteCarloOptions opt;
        opt.mode = config.mode;
        opt.bler_per_attempt = config.monte_carlo->bler_per_attempt;
        opt.n_cycles = config.monte_carlo->n_cycles;
        opt.seed = config.monte_carlo->seed;
        opt.tbs_bits = config.tbs_bits;
        opt.t_tb_s = t_tb_s;
        try {
            out.monte_carlo = scheduler::monte_carlo_goodput(r.params, dir, opt);
        } catch (const InvalidInput& e) {
            throw ConfigError(e.what());
        }
    }
    return out;
}

SweepAxis parse_axis(std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("axis '" + std::string(spec) + "' must look like key=v1,v2");
    }
    SweepAxis axis;
    axis.key = trim(spec.substr(0, eq));
    std::string rest(spec.substr(eq + 1));
    std::istringstream in(rest);
    std::string v;
    while (std::getline(in, v, ',')) {
        v = trim(v);
        if (!v.empty()) {
            axis.values.push_back(v);
        }
    }
    if (axis.key.empty() || axis.values.empty()) {
        throw ConfigError("axis '" + std::string(spec) + "' needs a key and at least one value");
    }
    return axis;
}

std::vector<ScenarioResult> sweep(const KeyValues& base, const std::vector<SweepAxis>& axes,
                                  const bler::BlerTable& table) {
    const auto& known = setters();
    for (const auto& a : axes) {
        if (a.key != "protocol" && known.find(a.key) == known.end()) {
            throw ConfigError("unknown sweep parameter '" + a.key + "'");
        }
    }
    const std::string base_name = base.get("scenario.name").value_or(ScenarioConfig{}.name);

    std::vector<ScenarioResult> out;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        KeyValues kv = base;
        std::string id = base_name;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const auto& value = axes[i].values[idx[i]];
            kv.set(axes[i].key, value);
            id += (i == 0 ? "[" : ";") + axes[i].key + "=" + value;
        }
        if (!axes.empty()) {
            id += "]";
        }
        kv.set("scenario.name", id);
        const ScenarioConfig config = build_config(kv);
        try {
            out.push_back(run_scenario(config, table));
        } catch (const Infeasible&) {
            ScenarioResult r;
            r.scenario_id = id;
            r.config = config;
            r.infeasible = true;
            r.slant_range_km =
                geometry::slant_range_km(config.geometry.altitude_km, config.geometry.service_elevation_deg);
            r.rtt_ms = config.rtt_override_ms ? *config.rtt_override_ms : geometry::round_trip_time_ms(config.geometry);
            r.snr_db = operating_snr(config, r.slant_range_km);
            out.push_back(r);
        }

        // Odometer over the axes, last axis fastest.
        std::size_t k = axes.size();
        while (k > 0) {
            --k;
            if (++idx[k] < axes[k].values.size()) {
                break;
            }
            idx[k] = 0;
            if (k == 0) {
                return out;
            }
        }
        if (axes.empty()) {
            return out;
        }
    }
}

std::string csv_header() {
    return "scenario_id,altitude_km,payload,elevation_deg,rtt_ms,snr_db,tbs_bits,n_rep,mode,n_tbphc,"
           "n_harq_required,suf,throughput_bps,gain_pct,power_nw,mc_goodput_bps,mc_retx_rate";
}

std::string csv_row(const ScenarioResult& r) {
    const auto& c = r.config;
    std::string id = r.scenario_id;
    if (id.find_first_of(",\"") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : id) {
            quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        }
        id = quoted + "\"";
    }
    std::string row = id + "," + fmt("%.1f", c.geometry.altitude_km) + "," +
                      std::string(payload_name(c.geometry.payload)) + "," +
                      fmt("%.1f", c.geometry.service_elevation_deg) + "," + fmt("%.3f", r.rtt_ms) + "," +
                      fmt("%.1f", r.snr_db) + "," + std::to_string(c.tbs_bits) + ",";
    if (r.infeasible) {
        return row + "," + std::string(mode_name(c.mode)) + ",,,,,,,,";
    }
    row += std::to_string(r.n_rep) + "," + std::string(mode_name(c.mode)) + "," + std::to_string(r.n_tbphc) + "," +
           std::to_string(r.report.required_harq) + "," + fmt("%.6f", r.report.suf) + "," +
           fmt("%.3f", r.report.throughput_bps) + "," + fmt("%.3f", r.report.gain_vs_baseline * 100.0) + "," +
           fmt("%.4f", r.report.power_cost_w * 1e9) + ",";
    if (r.monte_carlo) {
        row += fmt("%.3f", r.monte_carlo->goodput_bps) + "," + fmt("%.6f", r.monte_carlo->retransmission_rate);
    } else {
        row += ",";
    }
    return row;
}

std::string to_csv(const std::vector<ScenarioResult>& results) {
    std::string out = csv_header() + "\n";
    for (const auto& r : results) {
        out += csv_row(r) + "\n";
    }
    return out;
}

CalibrationResult calibrate(const KeyValues& profile, const bler::BlerTable& table) {
    CalibrationResult out;
    out.target_gain_pct = build_config(profile).target_gain_pct;
    bool have_best = false;
    for (int pdcch = 1; pdcch <= 8; ++pdcch) {
        for (int a2g = 0; a2g <= 4; ++a2g) {
            KeyValues kv = profile;
            kv.set("cycle.rep_pdcch", std::to_string(pdcch));
            kv.set("cycle.n_a2g", std::to_string(a2g));
            kv.set("mode", "proposed");
            CalibrationPoint pt{pdcch, a2g, 0.0};
            try {
                pt.gain_pct = run_scenario(build_config(kv), table).report.gain_vs_baseline * 100.0;
            } catch (const ConfigError&) {
                continue;  // this pair cannot be scheduled
            }
            out.grid.push_back(pt);
            const double dist = std::abs(pt.gain_pct - out.target_gain_pct);
            if (!have_best || dist < std::abs(out.best.gain_pct - out.target_gain_pct)) {
                out.best = pt;
                have_best = true;
            }
        }
    }
    if (!have_best) {
        throw ConfigError("no (rep_pdcch, n_a2g) pair yields a schedulable cycle");
    }
    return out;
}

ScenarioTimeline scenario_timeline(const ScenarioConfig& config, const bler::BlerTable& table) {
    const Resolved r = resolve(config, table);
    ScenarioTimeline out;
    out.rtt_ms = r.rtt_ms;
    if (config.mode == ScheduleMode::LegacyFixed) {
        auto legacy = scheduler::build_legacy_cycle(r.params, config.direction);
        out.timeline = std::move(legacy.timeline);
        out.conflicts = std::move(legacy.report);
    } else {
        try {
            out.timeline = scheduler::build_proposed_cycle(r.params, config.direction);
        } catch (const MinDelayViolation& e) {
            throw ConfigError(e.what());
        }
        out.conflicts = scheduler::validate(out.timeline, r.params);
    }
    return out;
}

std::string render_text(const SubframeTimeline& t, const scheduler::ConflictReport& conflicts) {
    std::ostringstream os;
    os << (t.perspective == scheduler::Perspective::UE ? "UE" : "BS") << " view, SF " << t.first_sf << ".."
       << t.first_sf + t.size() - 1 << "\n";
    os << "SF     ";
    for (int i = 0; i < t.size(); ++i) {
        os << static_cast<char>('0' + std::abs(t.first_sf + i) % 10);
    }
    os << "\n";
    for (const auto& lane : kLanes) {
        os << lane.label << ' ';
        for (const auto& s : t.slots) {
            char ch = '.';
            int hits = 0;
            for (const auto& a : s.activities) {
                if (a.kind == lane.kind) {
                    ch = lane.kind == Activity::Switch ? 'S' : tb_char(a);
                    ++hits;
                }
            }
            os << (hits > 1 ? '*' : ch);
        }
        os << "\n";
    }
    if (!conflicts.empty()) {
        std::string marks(static_cast<std::size_t>(t.size()), ' ');
        for (const auto& c : conflicts.conflicts) {
            const int off = c.sf_index - t.first_sf;
            if (off >= 0 && off < t.size()) {
                marks[static_cast<std::size_t>(off)] = '^';
            }
        }
        os << "clash  " << marks << "\n";
        for (const auto& c : conflicts.conflicts) {
            os << "conflict SF " << c.sf_index << ": " << scheduler::to_string(c.kind) << ' '
               << scheduler::to_string(c.first) << '/' << scheduler::to_string(c.second);
            if (!c.tb_indices.empty()) {
                os << " TB";
                for (int tb : c.tb_indices) {
                    os << ' ' << tb;
                }
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string render_svg(const SubframeTimeline& t, const scheduler::ConflictReport& conflicts) {
    constexpr int cell = 14;
    constexpr int label_w = 56;
    constexpr int top = 18;
    const int n_lanes = static_cast<int>(std::size(kLanes));
    const int width = label_w + cell * std::max(1, t.size()) + 4;
    const int height = top + cell * n_lanes + 8;
    static const char* colors[] = {"#4c72b0", "#55a868", "#c44e52", "#dd8452", "#999999"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"monospace\" font-size=\"10\">\n";
    for (int i = 0; i < t.size(); i += 5) {
        os << "<text x=\"" << label_w + i * cell << "\" y=\"12\">" << t.first_sf + i << "</text>\n";
    }
    for (int l = 0; l < n_lanes; ++l) {
        const int y = top + l * cell;
        os << "<text x=\"2\" y=\"" << y + cell - 3 << "\">" << trim(kLanes[l].label) << "</text>\n";
        for (int i = 0; i < t.size(); ++i) {
            const auto& s = t.slots[static_cast<std::size_t>(i)];
            for (const auto& a : s.activities) {
                if (a.kind != kLanes[l].kind) {
                    continue;
                }
                const int x = label_w + i * cell;
                os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell - 1 << "\" height=\"" << cell - 1
                   << "\" fill=\"" << colors[l] << "\"/>\n";
                if (a.tb_index) {
                    os << "<text x=\"" << x + 3 << "\" y=\"" << y + cell - 3 << "\" fill=\"white\">" << tb_char(a)
                       << "</text>\n";
                }
                break;
            }
        }
    }
    for (const auto& c : conflicts.conflicts) {
        const int off = c.sf_index - t.first_sf;
        if (off < 0 || off >= t.size()) {
            continue;
        }
        os << "<rect x=\"" << label_w + off * cell << "\" y=\"" << top << "\" width=\"" << cell - 1
           << "\" height=\"" << cell * n_lanes << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace ntnharq::scenario
