#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ntnharq/bler.hpp"
#include "ntnharq/errors.hpp"
#include "ntnharq/geometry.hpp"
#include "ntnharq/harq.hpp"
#include "ntnharq/linkbudget.hpp"
#include "ntnharq/metrics.hpp"
#include "ntnharq/scenario.hpp"
#include "ntnharq/scheduler.hpp"

namespace py = pybind11;
using namespace ntnharq;

namespace {

py::dict result_dict(const scenario::ScenarioResult& r) {
    py::dict d;
    d["scenario_id"] = r.scenario_id;
    d["slant_range_km"] = r.slant_range_km;
    d["rtt_ms"] = r.rtt_ms;
    d["snr_db"] = r.snr_db;
    d["n_rep"] = r.n_rep;
    d["n_tbphc"] = r.n_tbphc;
    d["cycle_length"] = r.cycle_length;
    d["suf"] = r.report.suf;
    d["throughput_bps"] = r.report.throughput_bps;
    d["baseline_throughput_bps"] = r.baseline_throughput_bps;
    d["gain_pct"] = r.report.gain_vs_baseline * 100.0;
    d["required_harq"] = r.report.required_harq;
    d["power_w"] = r.report.power_cost_w;
    d["mode"] = std::string(to_string(r.config.mode));
    d["infeasible"] = r.infeasible;
    if (r.monte_carlo) {
        d["mc_goodput_bps"] = r.monte_carlo->goodput_bps;
        d["mc_retransmission_rate"] = r.monte_carlo->retransmission_rate;
    }
    return d;
}

scenario::KeyValues with_overrides(const std::string& path, const std::map<std::string, std::string>& set) {
    auto kv = scenario::KeyValues::load(path);
    for (const auto& [k, v] : set) {
        kv.set(k, v);
    }
    return kv;
}

// Explicit path wins; otherwise the profile's bler.table, relative to the profile.
bler::BlerTable table_for(const std::string& path, const scenario::KeyValues& kv, const std::string& explicit_path) {
    std::filesystem::path t = explicit_path;
    if (t.empty()) {
        const auto key = kv.get("bler.table");
        if (!key) {
            return {};
        }
        t = *key;
        if (t.is_relative()) {
            t = std::filesystem::path(path).parent_path() / t;
        }
    }
    return bler::BlerTable::load(t);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "HARQ scheduling for IoT over LEO satellites";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NotFound>(m, "NotFound", PyExc_LookupError);
    py::register_exception<Infeasible>(m, "Infeasible", PyExc_RuntimeError);
    py::register_exception<MinDelayViolation>(m, "MinDelayViolation", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_RuntimeError);

    py::enum_<Direction>(m, "Direction").value("DL", Direction::DL).value("UL", Direction::UL);
    py::enum_<GrantMode>(m, "GrantMode").value("STBG", GrantMode::STBG).value("MTBG", GrantMode::MTBG);
    py::enum_<Bundling>(m, "Bundling").value("None_", Bundling::None).value("Bundled", Bundling::Bundled);
    py::enum_<ScheduleMode>(m, "ScheduleMode")
        .value("LegacyFixed", ScheduleMode::LegacyFixed)
        .value("ProposedVariable", ScheduleMode::ProposedVariable);

    // geometry
    py::enum_<geometry::Payload>(m, "Payload")
        .value("Transparent", geometry::Payload::Transparent)
        .value("Regenerative", geometry::Payload::Regenerative);
    py::class_<geometry::OrbitGeometry>(m, "OrbitGeometry")
        .def(py::init<>())
        .def(py::init([](double alt, double elev, double feeder, geometry::Payload p) {
                 return geometry::OrbitGeometry{alt, elev, feeder, p};
             }),
             py::arg("altitude_km"), py::arg("service_elevation_deg") = 30.0,
             py::arg("feeder_elevation_deg") = 10.0, py::arg("payload") = geometry::Payload::Transparent)
        .def_readwrite("altitude_km", &geometry::OrbitGeometry::altitude_km)
        .def_readwrite("service_elevation_deg", &geometry::OrbitGeometry::service_elevation_deg)
        .def_readwrite("feeder_elevation_deg", &geometry::OrbitGeometry::feeder_elevation_deg)
        .def_readwrite("payload", &geometry::OrbitGeometry::payload);
    m.def("slant_range_km", &geometry::slant_range_km, py::arg("altitude_km"), py::arg("elevation_deg"));
    m.def("round_trip_time_ms", &geometry::round_trip_time_ms, py::arg("geometry"));

    // link budget
    py::class_<linkbudget::LinkBudgetParams>(m, "LinkBudgetParams")
        .def(py::init<>())
        .def_readwrite("eirp_dbm", &linkbudget::LinkBudgetParams::eirp_dbm)
        .def_readwrite("g_over_t_db", &linkbudget::LinkBudgetParams::g_over_t_db)
        .def_readwrite("bandwidth_hz", &linkbudget::LinkBudgetParams::bandwidth_hz)
        .def_readwrite("carrier_ghz", &linkbudget::LinkBudgetParams::carrier_ghz)
        .def_readwrite("loss_atm_db", &linkbudget::LinkBudgetParams::loss_atm_db)
        .def_readwrite("loss_shadow_db", &linkbudget::LinkBudgetParams::loss_shadow_db)
        .def_readwrite("loss_scint_db", &linkbudget::LinkBudgetParams::loss_scint_db)
        .def_readwrite("loss_polar_db", &linkbudget::LinkBudgetParams::loss_polar_db);
    m.def("fspl_db", &linkbudget::fspl_db, py::arg("carrier_ghz"), py::arg("distance_m"));
    m.def("snr_db", &linkbudget::snr_db, py::arg("params"), py::arg("distance_m"));

    // bler
    py::class_<bler::BlerTable>(m, "BlerTable")
        .def(py::init<>())
        .def_static("load", [](const std::filesystem::path& p) { return bler::BlerTable::load(p); })
        .def("bler_at", &bler::BlerTable::bler_at, py::arg("tbs_bits"), py::arg("n_rep"), py::arg("snr_db"))
        .def("select_repetitions", &bler::BlerTable::select_repetitions, py::arg("tbs_bits"), py::arg("snr_db"),
             py::arg("target_bler"))
        .def("repetitions", &bler::BlerTable::repetitions, py::arg("tbs_bits"))
        .def("empty", &bler::BlerTable::empty);

    // harq
    py::class_<harq::CycleParams>(m, "CycleParams")
        .def(py::init<>())
        .def_readwrite("n_tbphc", &harq::CycleParams::n_tbphc)
        .def_readwrite("rep_pdcch", &harq::CycleParams::rep_pdcch)
        .def_readwrite("rep_pdsch", &harq::CycleParams::rep_pdsch)
        .def_readwrite("rep_pusch", &harq::CycleParams::rep_pusch)
        .def_readwrite("rep_pucch", &harq::CycleParams::rep_pucch)
        .def_readwrite("n_switch", &harq::CycleParams::n_switch)
        .def_readwrite("n_dg2d", &harq::CycleParams::n_dg2d)
        .def_readwrite("dd2a_min", &harq::CycleParams::dd2a_min)
        .def_readwrite("ug2d_min", &harq::CycleParams::ug2d_min)
        .def_readwrite("n_bundle", &harq::CycleParams::n_bundle)
        .def_readwrite("grant_mode", &harq::CycleParams::grant_mode)
        .def_readwrite("bundling", &harq::CycleParams::bundling)
        .def("validate", py::overload_cast<Direction>(&harq::CycleParams::validate, py::const_));
    m.def("fixed_position", &harq::fixed_position, py::arg("direction"), py::arg("anchor_sf"), py::arg("fixed_delay"));
    m.def("required_harq_count", &harq::required_harq_count, py::arg("rtt_ms"), py::arg("t_tb_ms"),
          py::arg("rep_data"));
    m.def("dd2a_variable", &harq::dd2a_variable, py::arg("params"), py::arg("j"));
    m.def("ug2d_variable", &harq::ug2d_variable, py::arg("params"), py::arg("j"));
    m.def("dd2a_bundled", &harq::dd2a_bundled, py::arg("params"), py::arg("j"));
    m.def(
        "delay_plan",
        [](const harq::CycleParams& p, Direction d) { return harq::delay_plan(p, d).delays; }, py::arg("params"),
        py::arg("direction"));

    // metrics
    m.def("suf_generic", &metrics::suf_generic, py::arg("n_data"), py::arg("n_rep"), py::arg("n_hc"));
    m.def("cycle_length_closed_form", &metrics::cycle_length_closed_form, py::arg("params"), py::arg("direction"),
          py::arg("mode"));
    m.def("suf_closed_form", &metrics::suf_closed_form, py::arg("params"), py::arg("direction"), py::arg("mode"));
    m.def("throughput_bps", &metrics::throughput_bps, py::arg("suf"), py::arg("tbs_bits"), py::arg("t_tb_s"));
    m.def(
        "delay_power_w",
        [](double eff, double rate, double ops) { return metrics::delay_power_w({eff, rate, ops}); },
        py::arg("efficiency_mops_per_mw") = 144.0, py::arg("op_rate_per_s") = 1000.0,
        py::arg("op_count") = static_cast<double>(metrics::kOpsDd2a));

    // scheduler
    py::class_<scheduler::SubframeTimeline>(m, "SubframeTimeline")
        .def("__len__", &scheduler::SubframeTimeline::size)
        .def_readonly("first_sf", &scheduler::SubframeTimeline::first_sf)
        .def("count",
             [](const scheduler::SubframeTimeline& t, const std::string& kind) {
                 return t.count(scheduler::activity_from_string(kind));
             })
        .def("activities", [](const scheduler::SubframeTimeline& t) {
            std::vector<std::vector<std::string>> out;
            for (const auto& s : t.slots) {
                auto& row = out.emplace_back();
                for (const auto& a : s.activities) {
                    row.emplace_back(scheduler::to_string(a.kind));
                }
            }
            return out;
        });
    m.def("build_proposed_cycle", &scheduler::build_proposed_cycle, py::arg("params"), py::arg("direction"));
    m.def(
        "build_legacy_cycle",
        [](const harq::CycleParams& p, Direction d) { return scheduler::build_legacy_cycle(p, d).timeline; },
        py::arg("params"), py::arg("direction"));
    m.def(
        "validate",
        [](const scheduler::SubframeTimeline& t, const harq::CycleParams& p) {
            std::vector<std::pair<std::string, int>> out;
            for (const auto& c : scheduler::validate(t, p).conflicts) {
                out.emplace_back(scheduler::to_string(c.kind), c.sf_index);
            }
            return out;
        },
        py::arg("timeline"), py::arg("params"));
    m.def("bs_view", &scheduler::bs_view, py::arg("timeline"), py::arg("rtt_ms"));
    m.def("export_csv", &scheduler::export_csv, py::arg("timeline"));
    m.def("import_csv", &scheduler::import_csv, py::arg("text"));
    m.def(
        "monte_carlo_goodput",
        [](const harq::CycleParams& p, Direction d, ScheduleMode mode, std::vector<double> bler, int n_cycles,
           std::uint64_t seed, double tbs_bits, double t_tb_s) {
            const auto r = scheduler::monte_carlo_goodput(p, d, {mode, std::move(bler), n_cycles, seed, tbs_bits, t_tb_s});
            py::dict out;
            out["goodput_bps"] = r.goodput_bps;
            out["retransmission_rate"] = r.retransmission_rate;
            out["attempts"] = r.attempts;
            out["successes"] = r.successes;
            out["pending"] = r.pending;
            return out;
        },
        py::arg("params"), py::arg("direction"), py::arg("mode") = ScheduleMode::ProposedVariable,
        py::arg("bler_per_attempt") = std::vector<double>{0.0}, py::arg("n_cycles") = 1000, py::arg("seed") = 1,
        py::arg("tbs_bits") = 504.0, py::arg("t_tb_s") = 1e-3);

    // scenarios
    m.def(
        "run_profile",
        [](const std::string& path, const std::string& bler_table, const std::map<std::string, std::string>& set) {
            const auto kv = with_overrides(path, set);
            return result_dict(scenario::run_scenario(scenario::build_config(kv), table_for(path, kv, bler_table)));
        },
        py::arg("path"), py::arg("bler_table") = "", py::arg("set") = std::map<std::string, std::string>{});
    m.def(
        "calibrate",
        [](const std::string& path, const std::string& bler_table) {
            const auto kv = scenario::KeyValues::load(path);
            const auto cal = scenario::calibrate(kv, table_for(path, kv, bler_table));
            py::dict d;
            d["rep_pdcch"] = cal.best.rep_pdcch;
            d["n_a2g"] = cal.best.n_a2g;
            d["gain_pct"] = cal.best.gain_pct;
            d["target_gain_pct"] = cal.target_gain_pct;
            return d;
        },
        py::arg("path"), py::arg("bler_table") = "");
    m.def(
        "sweep_csv",
        [](const std::string& path, const std::vector<std::string>& axes, const std::string& bler_table) {
            std::vector<scenario::SweepAxis> parsed;
            for (const auto& a : axes) {
                parsed.push_back(scenario::parse_axis(a));
            }
            const auto kv = scenario::KeyValues::load(path);
            return scenario::to_csv(scenario::sweep(kv, parsed, table_for(path, kv, bler_table)));
        },
        py::arg("path"), py::arg("axes"), py::arg("bler_table") = "");
}
