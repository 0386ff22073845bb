// Command-line front end: run, sweep, timeline, calibrate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ntnharq/errors.hpp"
#include "ntnharq/scenario.hpp"

namespace fs = std::filesystem;
using namespace ntnharq;

namespace {

constexpr int kExitInfeasible = 2;
constexpr int kExitConfig = 3;

struct Common {
    std::string config;
    std::string profile;
    std::string bler_table;
    std::string out;
    std::vector<std::string> overrides;
};

fs::path config_path(const Common& c) {
    if (!c.profile.empty()) {
        fs::path p = fs::path(NTNHARQ_PROFILE_DIR) / c.profile;
        if (p.extension() != ".cfg") {
            p += ".cfg";
        }
        return p;
    }
    if (c.config.empty()) {
        throw ConfigError("give a config file or --profile NAME");
    }
    return c.config;
}

scenario::KeyValues load_config(const Common& c) {
    auto kv = scenario::KeyValues::load(config_path(c));
    for (const auto& o : c.overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects key=value, got '" + o + "'");
        }
        kv.set(o.substr(0, eq), o.substr(eq + 1));
    }
    return kv;
}

bler::BlerTable load_table(const Common& c, const scenario::KeyValues& kv) {
    fs::path path;
    if (!c.bler_table.empty()) {
        path = c.bler_table;
    } else if (const auto t = kv.get("bler.table")) {
        path = *t;
        if (path.is_relative()) {
            path = config_path(c).parent_path() / path;
        }
    } else {
        path = fs::path(NTNHARQ_DATA_DIR) / "bler_pusch_tdla.csv";
    }
    if (!fs::exists(path)) {
        const auto rep = kv.get("cycle.rep_data");
        if (rep && *rep != "auto") {
            return {};  // repetitions pinned, no lookup needed
        }
    }
    try {
        return bler::BlerTable::load(path);
    } catch (const InvalidInput& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot write " + c.out);
    }
    f << text;
}

// Replaces `key = ...` in place (or appends it), keeping comments and layout.
std::string set_in_text(const std::string& text, const std::string& key, const std::string& value) {
    std::istringstream in(text);
    std::string line;
    std::string out;
    bool done = false;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (!done && first != std::string::npos && line.compare(first, key.size(), key) == 0) {
            const auto rest = line.find_first_not_of(" \t", first + key.size());
            if (rest != std::string::npos && line[rest] == '=') {
                line = key + " = " + value;
                done = true;
            }
        }
        out += line + "\n";
    }
    if (!done) {
        out += key + " = " + value + "\n";
    }
    return out;
}

int cmd_run(const Common& c) {
    const auto kv = load_config(c);
    const auto table = load_table(c, kv);
    const auto result = scenario::run_scenario(scenario::build_config(kv), table);
    emit(c, scenario::to_csv({result}));
    return 0;
}

int cmd_sweep(const Common& c, const std::vector<std::string>& axis_specs) {
    const auto kv = load_config(c);
    const auto table = load_table(c, kv);
    std::vector<scenario::SweepAxis> axes;
    for (const auto& s : axis_specs) {
        axes.push_back(scenario::parse_axis(s));
    }
    const auto results = scenario::sweep(kv, axes, table);
    emit(c, scenario::to_csv(results));
    for (const auto& r : results) {
        if (r.infeasible) {
            return kExitInfeasible;
        }
    }
    return 0;
}

int cmd_timeline(const Common& c, const std::string& perspective, const std::string& format, int cycles) {
    const auto kv = load_config(c);
    const auto table = load_table(c, kv);
    const auto config = scenario::build_config(kv);
    auto tl = scenario::scenario_timeline(config, table);
    auto timeline = scheduler::repeat_cycles(tl.timeline, cycles);
    // Conflicts are UE-side subframe indices; the BS view shows none of its own.
    scheduler::ConflictReport marks = tl.conflicts;
    std::string notes;
    if (perspective == "bs") {
        timeline = scheduler::bs_view(timeline, tl.rtt_ms);
        for (const auto& k : tl.conflicts.conflicts) {
            notes += "UE conflict SF " + std::to_string(k.sf_index) + ": " + std::string(scheduler::to_string(k.kind)) +
                     "\n";
        }
        marks = {};
    }
    if (format == "svg") {
        emit(c, scenario::render_svg(timeline, marks));
    } else if (format == "csv") {
        emit(c, scheduler::export_csv(timeline));
    } else {
        emit(c, scenario::render_text(timeline, marks) + notes);
    }
    return 0;
}

int cmd_calibrate(const Common& c, bool dry_run) {
    const auto kv = load_config(c);
    const auto table = load_table(c, kv);
    const auto cal = scenario::calibrate(kv, table);
    std::ostringstream os;
    os << "rep_pdcch,n_a2g,gain_pct\n";
    for (const auto& p : cal.grid) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", p.gain_pct);
        os << p.rep_pdcch << ',' << p.n_a2g << ',' << buf << '\n';
    }
    char line[160];
    std::snprintf(line, sizeof line, "best: rep_pdcch=%d n_a2g=%d gain=%.2f%% (target %.1f%%)\n",
                  cal.best.rep_pdcch, cal.best.n_a2g, cal.best.gain_pct, cal.target_gain_pct);
    os << line;
    emit(c, os.str());

    if (!dry_run) {
        const auto path = config_path(c);
        std::ifstream in(path);
        std::stringstream text;
        text << in.rdbuf();
        in.close();
        std::string updated = set_in_text(text.str(), "cycle.rep_pdcch", std::to_string(cal.best.rep_pdcch));
        updated = set_in_text(updated, "cycle.n_a2g", std::to_string(cal.best.n_a2g));
        std::ofstream(path, std::ios::binary) << updated;
        std::cerr << "wrote calibrated pair to " << path.string() << "\n";
    }
    return 0;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("config", c.config, "Scenario config file");
    sub->add_option("--profile", c.profile, "Shipped profile name, e.g. leo600_ltem");
    sub->add_option("--bler-table", c.bler_table, "BLER table CSV (tbs,n_rep,snr_db,bler)");
    sub->add_option("--out", c.out, "Write output here instead of stdout");
    sub->add_option("--set", c.overrides, "Override a config key, key=value");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HARQ scheduling simulator for IoT over LEO satellites"};
    app.require_subcommand(1);

    Common common;
    auto* run = app.add_subcommand("run", "Run one scenario, print a CSV row");
    add_common(run, common);

    std::vector<std::string> axes;
    auto* sw = app.add_subcommand("sweep", "Cartesian parameter sweep to CSV");
    add_common(sw, common);
    sw->add_option("--axis", axes, "key=v1,v2,... (repeatable)");

    std::string perspective = "ue";
    std::string format = "text";
    int cycles = 1;
    auto* tl = app.add_subcommand("timeline", "Render the subframe timeline");
    add_common(tl, common);
    tl->add_option("--perspective", perspective)->check(CLI::IsMember({"ue", "bs"}));
    tl->add_option("--format", format)->check(CLI::IsMember({"text", "svg", "csv"}));
    tl->add_option("--cycles", cycles, "Number of cycles to draw")->check(CLI::PositiveNumber);

    bool dry_run = false;
    auto* cal = app.add_subcommand("calibrate", "Fit rep_pdcch and N_A2G to the target gain");
    add_common(cal, common);
    cal->add_flag("--dry-run", dry_run, "Print the result without touching the profile");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(common);
        if (sw->parsed()) return cmd_sweep(common, axes);
        if (tl->parsed()) return cmd_timeline(common, perspective, format, cycles);
        if (cal->parsed()) return cmd_calibrate(common, dry_run);
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NotFound& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidInput& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const MinDelayViolation& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
