#include "ntnharq/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "ntnharq/errors.hpp"
#include "ntnharq/metrics.hpp"

namespace ntnharq::scheduler {

using harq::CycleParams;

std::string_view to_string(Activity a) {
    switch (a) {
        case Activity::RxPDCCH: return "RxPDCCH";
        case Activity::RxPDSCH: return "RxPDSCH";
        case Activity::TxPUCCH: return "TxPUCCH";
        case Activity::TxPUSCH: return "TxPUSCH";
        case Activity::Switch: return "Switch";
        case Activity::Idle: return "Idle";
    }
    return "Idle";
}

Activity activity_from_string(std::string_view s) {
    for (auto a : {Activity::RxPDCCH, Activity::RxPDSCH, Activity::TxPUCCH, Activity::TxPUSCH, Activity::Switch,
                   Activity::Idle}) {
        if (to_string(a) == s) {
            return a;
        }
    }
    throw InvalidInput("unknown activity '" + std::string(s) + "'");
}

bool is_rx(Activity a) { return a == Activity::RxPDCCH || a == Activity::RxPDSCH; }
bool is_tx(Activity a) { return a == Activity::TxPUCCH || a == Activity::TxPUSCH; }

std::string_view to_string(Perspective p) { return p == Perspective::UE ? "UE" : "BS"; }

std::string_view to_string(ConflictKind k) {
    switch (k) {
        case ConflictKind::Overlap: return "overlap";
        case ConflictKind::MissingSwitch: return "missing-switch";
        case ConflictKind::MinDelay: return "min-delay";
    }
    return "overlap";
}

bool Subframe::has(Activity kind) const {
    return std::any_of(activities.begin(), activities.end(),
                       [kind](const SubframeActivity& a) { return a.kind == kind; });
}

int SubframeTimeline::count(Activity kind) const {
    int n = 0;
    for (const auto& s : slots) {
        for (const auto& a : s.activities) {
            n += a.kind == kind ? 1 : 0;
        }
    }
    return n;
}

int ConflictReport::count(ConflictKind kind) const {
    return static_cast<int>(std::count_if(conflicts.begin(), conflicts.end(),
                                          [kind](const Conflict& c) { return c.kind == kind; }));
}

namespace {

class Layout {
public:
    void place(int first, int len, Activity kind, std::optional<int> tb) {
        if (first < 0) {
            throw InvalidInput("activity placed before the cycle start");
        }
        std::optional<int> harq_id;
        if (tb) {
            harq_id = *tb - 1;
        }
        for (int sf = first; sf < first + len; ++sf) {
            at(sf).activities.push_back({kind, tb, harq_id});
        }
    }

    // Puts `n_switch` Switch slots before every Rx->Tx edge and after every
    // Tx->Rx edge (including the wrap back to the next cycle). Only empty
    // slots are used; a shortfall is left for validate() to report.
    void insert_switching(int n_switch) {
        if (n_switch == 0) {
            return;
        }
        const auto dirs = directions();
        const int last_tx = last_of(dirs, Dir::Tx);
        std::vector<int> before;
        std::vector<int> after;
        Dir prev = Dir::None;
        for (int sf = 0; sf < static_cast<int>(dirs.size()); ++sf) {
            const Dir d = dirs[static_cast<std::size_t>(sf)];
            if (d == Dir::None) {
                continue;
            }
            if (prev == Dir::Rx && d == Dir::Tx) {
                before.push_back(sf);
            }
            if (prev == Dir::Tx && d == Dir::Rx) {
                after.push_back(last_before(dirs, sf));
            }
            prev = d;
        }
        if (last_tx >= 0 && first_of(dirs, Dir::Rx) >= 0) {
            after.push_back(last_tx);  // return to Rx for the next cycle
        }
        for (int edge : before) {
            for (int sf = edge - 1; sf >= std::max(0, edge - n_switch); --sf) {
                if (!slot_empty(sf)) {
                    break;
                }
                at(sf).activities.push_back({Activity::Switch, {}, {}});
            }
        }
        for (int edge : after) {
            for (int sf = edge + 1; sf <= edge + n_switch; ++sf) {
                if (!slot_empty(sf)) {
                    break;
                }
                at(sf).activities.push_back({Activity::Switch, {}, {}});
            }
        }
    }

    SubframeTimeline finish(int min_length = 0) && {
        if (min_length > static_cast<int>(slots_.size())) {
            slots_.resize(static_cast<std::size_t>(min_length));
        }
        SubframeTimeline t;
        t.slots = std::move(slots_);
        t.cycle_boundaries = {0, t.size()};
        return t;
    }

private:
    enum class Dir { None, Rx, Tx, Mixed };

    Subframe& at(int sf) {
        if (sf >= static_cast<int>(slots_.size())) {
            slots_.resize(static_cast<std::size_t>(sf) + 1);
        }
        return slots_[static_cast<std::size_t>(sf)];
    }

    bool slot_empty(int sf) const {
        return sf >= static_cast<int>(slots_.size()) || slots_[static_cast<std::size_t>(sf)].idle();
    }

    std::vector<Dir> directions() const {
        std::vector<Dir> out(slots_.size(), Dir::None);
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            bool rx = false;
            bool tx = false;
            for (const auto& a : slots_[i].activities) {
                rx = rx || is_rx(a.kind);
                tx = tx || is_tx(a.kind);
            }
            out[i] = rx && tx ? Dir::Mixed : rx ? Dir::Rx : tx ? Dir::Tx : Dir::None;
        }
        return out;
    }

    static int last_of(const std::vector<Dir>& dirs, Dir d) {
        for (int i = static_cast<int>(dirs.size()) - 1; i >= 0; --i) {
            if (dirs[static_cast<std::size_t>(i)] == d) {
                return i;
            }
        }
        return -1;
    }

    static int first_of(const std::vector<Dir>& dirs, Dir d) {
        const auto it = std::find(dirs.begin(), dirs.end(), d);
        return it == dirs.end() ? -1 : static_cast<int>(it - dirs.begin());
    }

    static int last_before(const std::vector<Dir>& dirs, int sf) {
        for (int i = sf - 1; i >= 0; --i) {
            if (dirs[static_cast<std::size_t>(i)] != Dir::None) {
                return i;
            }
        }
        return -1;
    }

    std::vector<Subframe> slots_;
};

int grant_end(const CycleParams& p, int j) {
    return (p.grant_mode == GrantMode::STBG ? j : 1) * p.rep_pdcch - 1;
}

void place_grants(Layout& layout, const CycleParams& p) {
    if (p.grant_mode == GrantMode::MTBG) {
        layout.place(0, p.rep_pdcch, Activity::RxPDCCH, {});
        return;
    }
    for (int j = 1; j <= p.n_tbphc; ++j) {
        layout.place((j - 1) * p.rep_pdcch, p.rep_pdcch, Activity::RxPDCCH, j);
    }
}

// Idle slots the closed-form cycle reserves for the processing-time guard.
int reserved_padding(const CycleParams& p, Direction dir) {
    if (dir == Direction::DL) {
        return std::max(0, p.dd2a_min - (p.ack_blocks() - 1) * p.rep_pucch);
    }
    return std::max(0, p.ug2d_min - (p.grant_blocks() - 1) * p.rep_pdcch);
}

// Idle slots actually needed so the tightest TB meets the minimum delay.
int needed_padding(const harq::DelayPlan& plan, int min_delay) {
    const int tightest = *std::min_element(plan.delays.begin(), plan.delays.end());
    return std::max(0, min_delay - tightest);
}

int min_delay(const CycleParams& p, Direction dir) { return dir == Direction::DL ? p.dd2a_min : p.ug2d_min; }

bool is_bundle_head(const CycleParams& p, int j) {
    return p.bundling == Bundling::None || (j - 1) % p.n_bundle == 0;
}

}  // namespace

harq::DelayPlan realized_delays(const CycleParams& p, Direction dir) {
    auto plan = harq::delay_plan(p, dir);
    const int pad = needed_padding(plan, min_delay(p, dir));
    for (int& d : plan.delays) {
        d += pad;
    }
    return plan;
}

SubframeTimeline build_proposed_cycle(const CycleParams& p, Direction dir) {
    const auto formula = harq::delay_plan(p, dir);
    const int needed = needed_padding(formula, min_delay(p, dir));
    const int reserved = reserved_padding(p, dir);
    if (needed > reserved) {
        const auto tight = std::min_element(formula.delays.begin(), formula.delays.end());
        const int j = static_cast<int>(tight - formula.delays.begin()) + 1;
        throw MinDelayViolation("TB " + std::to_string(j) + " would get " +
                                std::string(dir == Direction::DL ? "DD2A " : "UG2D ") + std::to_string(*tight + reserved) +
                                " SFs, below the minimum of " + std::to_string(min_delay(p, dir)));
    }
    auto plan = formula;
    for (int& d : plan.delays) {
        d += needed;
    }

    Layout layout;
    place_grants(layout, p);
    if (dir == Direction::DL) {
        int start = p.grant_blocks() * p.rep_pdcch + p.n_dg2d;
        for (int j = 1; j <= p.n_tbphc; ++j) {
            const int reps = p.pdsch_reps(j);
            layout.place(start, reps, Activity::RxPDSCH, j);
            const int data_end = start + reps - 1;
            if (is_bundle_head(p, j)) {
                const int ack = harq::fixed_position(dir, data_end, plan.delays[static_cast<std::size_t>(j - 1)]);
                layout.place(ack, p.rep_pucch, Activity::TxPUCCH, j);
            }
            start += reps;
        }
    } else {
        for (int j = 1; j <= p.n_tbphc; ++j) {
            const int first =
                harq::fixed_position(dir, grant_end(p, j), plan.delays[static_cast<std::size_t>(j - 1)]);
            layout.place(first, p.pusch_reps(j), Activity::TxPUSCH, j);
        }
    }
    layout.insert_switching(p.n_switch);
    // Guard slots reserved but not needed stay idle at the end of the cycle.
    return std::move(layout).finish(metrics::cycle_length_closed_form(p, dir, ScheduleMode::ProposedVariable));
}

LegacyCycle build_legacy_cycle(const CycleParams& p, Direction dir) {
    p.validate(dir);
    Layout layout;
    if (dir == Direction::DL) {
        const int first_data = p.rep_pdcch + p.n_dg2d;
        int start = first_data;
        for (int j = 1; j <= p.n_tbphc; ++j) {
            const int reps = p.pdsch_reps(j);
            if (p.grant_mode == GrantMode::STBG) {
                const int g_end = start - p.n_dg2d - 1;
                layout.place(g_end - p.rep_pdcch + 1, p.rep_pdcch, Activity::RxPDCCH, j);
            } else if (j == 1) {
                layout.place(0, p.rep_pdcch, Activity::RxPDCCH, {});
            }
            layout.place(start, reps, Activity::RxPDSCH, j);
            const int ack = harq::fixed_position(dir, start + reps - 1, p.dd2a_min);
            layout.place(ack, p.rep_pucch, Activity::TxPUCCH, j);
            start += reps;
        }
    } else {
        int start = harq::fixed_position(dir, p.rep_pdcch - 1, p.ug2d_min);
        for (int j = 1; j <= p.n_tbphc; ++j) {
            if (p.grant_mode == GrantMode::STBG) {
                const int g_end = start - p.ug2d_min - 1;
                layout.place(g_end - p.rep_pdcch + 1, p.rep_pdcch, Activity::RxPDCCH, j);
            } else if (j == 1) {
                layout.place(0, p.rep_pdcch, Activity::RxPDCCH, {});
            }
            layout.place(start, p.pusch_reps(j), Activity::TxPUSCH, j);
            start += p.pusch_reps(j);
        }
    }
    layout.insert_switching(p.n_switch);
    LegacyCycle out{std::move(layout).finish(), {}};
    out.report = validate(out.timeline, p);
    return out;
}

namespace {

std::vector<int> tbs_of(const Subframe& s) {
    std::vector<int> tbs;
    for (const auto& a : s.activities) {
        if (a.tb_index) {
            tbs.push_back(*a.tb_index);
        }
    }
    return tbs;
}

void check_bs(const SubframeTimeline& t, ConflictReport& report) {
    for (int i = 0; i < t.size(); ++i) {
        const auto& s = t.slots[static_cast<std::size_t>(i)];
        std::vector<Activity> dl;
        std::vector<Activity> ul;
        for (const auto& a : s.activities) {
            if (is_rx(a.kind)) {
                dl.push_back(a.kind);
            } else if (is_tx(a.kind)) {
                ul.push_back(a.kind);
            }
        }
        for (const auto* lane : {&dl, &ul}) {
            if (lane->size() > 1) {
                report.conflicts.push_back(
                    {ConflictKind::Overlap, t.first_sf + i, (*lane)[0], (*lane)[1], tbs_of(s)});
            }
        }
    }
}

void check_overlaps(const SubframeTimeline& t, ConflictReport& report) {
    for (int i = 0; i < t.size(); ++i) {
        const auto& s = t.slots[static_cast<std::size_t>(i)];
        if (s.activities.size() > 1) {
            report.conflicts.push_back(
                {ConflictKind::Overlap, t.first_sf + i, s.activities[0].kind, s.activities[1].kind, tbs_of(s)});
        }
    }
}

// Double-booked slots are reported as overlaps and break the Rx/Tx
// sequence, so switching is only judged between cleanly booked slots.
void check_switching(const SubframeTimeline& t, int n_switch, ConflictReport& report) {
    if (n_switch == 0) {
        return;
    }
    struct Mark {
        int offset;
        Activity kind;
        std::optional<int> tb;
    };
    std::vector<std::optional<Mark>> seq;  // nullopt == barrier
    std::vector<int> switch_prefix(static_cast<std::size_t>(t.size()) + 1, 0);
    bool any_barrier = false;
    for (int i = 0; i < t.size(); ++i) {
        const auto& s = t.slots[static_cast<std::size_t>(i)];
        const bool lone_switch = s.activities.size() == 1 && s.activities[0].kind == Activity::Switch;
        switch_prefix[static_cast<std::size_t>(i) + 1] = switch_prefix[static_cast<std::size_t>(i)] + (lone_switch ? 1 : 0);
        if (s.activities.size() > 1) {
            seq.push_back(std::nullopt);
            any_barrier = true;
        } else if (s.activities.size() == 1 && (is_rx(s.activities[0].kind) || is_tx(s.activities[0].kind))) {
            seq.push_back(Mark{i, s.activities[0].kind, s.activities[0].tb_index});
        }
    }
    auto switches_between = [&](int a, int b) {
        return switch_prefix[static_cast<std::size_t>(b)] - switch_prefix[static_cast<std::size_t>(a) + 1];
    };
    auto flag = [&](const Mark& from, const Mark& to) {
        std::vector<int> tbs;
        for (const auto& tb : {from.tb, to.tb}) {
            if (tb) {
                tbs.push_back(*tb);
            }
        }
        report.conflicts.push_back({ConflictKind::MissingSwitch, t.first_sf + to.offset, from.kind, to.kind, tbs});
    };

    std::optional<Mark> prev;
    for (const auto& m : seq) {
        if (!m) {
            prev.reset();
            continue;
        }
        if (prev && is_rx(prev->kind) != is_rx(m->kind) && switches_between(prev->offset, m->offset) < n_switch) {
            flag(*prev, *m);
        }
        prev = m;
    }
    // Wrap-around into the next repetition of the timeline.
    if (!any_barrier && seq.size() > 1) {
        const auto& last = *seq.back();
        const auto& first = *seq.front();
        if (is_rx(last.kind) != is_rx(first.kind)) {
            const int room = switches_between(last.offset, t.size()) + switch_prefix[static_cast<std::size_t>(first.offset)];
            if (room < n_switch) {
                flag(last, first);
            }
        }
    }
}

// TB indices restart every cycle, so separations are checked per cycle.
void check_min_delays(const SubframeTimeline& t, const CycleParams& p, int begin, int end, ConflictReport& report) {
    std::map<int, int> pdsch_end;
    std::map<int, int> pusch_start;
    std::map<int, int> pucch_start;
    std::map<int, int> grant_end_by_tb;
    std::vector<int> shared_grant_ends;
    for (int i = begin; i < end; ++i) {
        for (const auto& a : t.slots[static_cast<std::size_t>(i)].activities) {
            switch (a.kind) {
                case Activity::RxPDSCH:
                    if (a.tb_index) pdsch_end[*a.tb_index] = i;
                    break;
                case Activity::TxPUSCH:
                    if (a.tb_index) pusch_start.try_emplace(*a.tb_index, i);
                    break;
                case Activity::TxPUCCH:
                    if (a.tb_index) pucch_start.try_emplace(*a.tb_index, i);
                    break;
                case Activity::RxPDCCH:
                    if (a.tb_index) {
                        grant_end_by_tb[*a.tb_index] = i;
                    } else {
                        shared_grant_ends.push_back(i);
                    }
                    break;
                default:
                    break;
            }
        }
    }
    for (const auto& [tb, end] : pdsch_end) {
        const int head = p.bundling == Bundling::Bundled ? ((tb - 1) / p.n_bundle) * p.n_bundle + 1 : tb;
        const auto ack = pucch_start.find(head);
        if (ack == pucch_start.end()) {
            continue;
        }
        const int gap = ack->second - end - 1;
        if (gap < p.dd2a_min) {
            report.conflicts.push_back(
                {ConflictKind::MinDelay, t.first_sf + ack->second, Activity::RxPDSCH, Activity::TxPUCCH, {tb}});
        }
    }
    for (const auto& [tb, start] : pusch_start) {
        std::optional<int> g_end;
        if (const auto it = grant_end_by_tb.find(tb); it != grant_end_by_tb.end()) {
            g_end = it->second;
        } else {
            for (int e : shared_grant_ends) {
                if (e < start) {
                    g_end = e;
                }
            }
        }
        if (!g_end) {
            continue;
        }
        const int gap = start - *g_end - 1;
        if (gap < p.ug2d_min) {
            report.conflicts.push_back(
                {ConflictKind::MinDelay, t.first_sf + start, Activity::RxPDCCH, Activity::TxPUSCH, {tb}});
        }
    }
}

}  // namespace

ConflictReport validate(const SubframeTimeline& t, const CycleParams& p) {
    ConflictReport report;
    if (t.perspective == Perspective::BS) {
        check_bs(t, report);
        return report;
    }
    check_overlaps(t, report);
    check_switching(t, p.n_switch, report);
    std::vector<int> bounds = t.cycle_boundaries;
    const bool usable = bounds.size() >= 2 && bounds.front() == 0 && bounds.back() == t.size() &&
                        std::is_sorted(bounds.begin(), bounds.end());
    if (!usable) {
        bounds = {0, t.size()};
    }
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        check_min_delays(t, p, bounds[k], bounds[k + 1], report);
    }
    std::stable_sort(report.conflicts.begin(), report.conflicts.end(),
                     [](const Conflict& a, const Conflict& b) { return a.sf_index < b.sf_index; });
    return report;
}

SubframeTimeline bs_view(const SubframeTimeline& t, double rtt_ms) {
    if (t.perspective != Perspective::UE) {
        throw InvalidInput("bs_view expects a UE-perspective timeline");
    }
    if (!(rtt_ms >= 0.0)) {
        throw InvalidInput("rtt must be non-negative");
    }
    const int shift = static_cast<int>(std::ceil(rtt_ms / 2.0 - 1e-9));
    SubframeTimeline out;
    out.perspective = Perspective::BS;
    out.first_sf = t.first_sf - shift;
    out.slots.resize(t.slots.size() + 2 * static_cast<std::size_t>(shift));
    for (int i = 0; i < t.size(); ++i) {
        for (const auto& a : t.slots[static_cast<std::size_t>(i)].activities) {
            int offset = i + shift;  // position in `out`
            if (is_rx(a.kind)) {
                offset -= shift;
            } else if (is_tx(a.kind)) {
                offset += shift;
            }
            out.slots[static_cast<std::size_t>(offset)].activities.push_back(a);
        }
    }
    for (int b : t.cycle_boundaries) {
        out.cycle_boundaries.push_back(b + shift);
    }
    return out;
}

SubframeTimeline repeat_cycles(const SubframeTimeline& cycle, int n) {
    if (n < 1) {
        throw InvalidInput("repeat count must be >= 1");
    }
    SubframeTimeline out;
    out.perspective = cycle.perspective;
    out.first_sf = cycle.first_sf;
    out.cycle_boundaries.push_back(0);
    for (int k = 0; k < n; ++k) {
        out.slots.insert(out.slots.end(), cycle.slots.begin(), cycle.slots.end());
        out.cycle_boundaries.push_back(out.size());
    }
    return out;
}

std::string export_csv(const SubframeTimeline& t) {
    std::ostringstream os;
    os << "index,perspective,activity,tb_index,harq_id\n";
    const auto persp = to_string(t.perspective);
    for (int i = 0; i < t.size(); ++i) {
        const int index = t.first_sf + i;
        const auto& s = t.slots[static_cast<std::size_t>(i)];
        if (s.idle()) {
            os << index << ',' << persp << ",Idle,,\n";
            continue;
        }
        for (const auto& a : s.activities) {
            os << index << ',' << persp << ',' << to_string(a.kind) << ',';
            if (a.tb_index) {
                os << *a.tb_index;
            }
            os << ',';
            if (a.harq_id) {
                os << *a.harq_id;
            }
            os << '\n';
        }
    }
    return os.str();
}

SubframeTimeline import_csv(std::string_view text) {
    SubframeTimeline t;
    std::istringstream in{std::string(text)};
    std::string line;
    bool first_row = true;
    int expected = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.starts_with("index,")) {
            continue;
        }
        std::vector<std::string> f;
        std::string tok;
        std::istringstream ls(line);
        while (std::getline(ls, tok, ',')) {
            f.push_back(tok);
        }
        while (f.size() < 5) {
            f.emplace_back();
        }
        const int index = std::stoi(f[0]);
        if (first_row) {
            t.first_sf = index;
            t.perspective = f[1] == "BS" ? Perspective::BS : Perspective::UE;
            expected = index;
            first_row = false;
        }
        if (index == expected) {
            t.slots.emplace_back();
            ++expected;
        } else if (index != expected - 1) {
            throw InvalidInput("timeline rows must be consecutive (row " + f[0] + ")");
        }
        const Activity kind = activity_from_string(f[2]);
        if (kind == Activity::Idle) {
            continue;
        }
        SubframeActivity a{kind, {}, {}};
        if (!f[3].empty()) a.tb_index = std::stoi(f[3]);
        if (!f[4].empty()) a.harq_id = std::stoi(f[4]);
        t.slots.back().activities.push_back(a);
    }
    t.cycle_boundaries = {0, t.size()};
    return t;
}

MonteCarloResult monte_carlo_goodput(const CycleParams& p, Direction dir, const MonteCarloOptions& opt) {
    if (opt.bler_per_attempt.empty()) {
        throw InvalidInput("bler_per_attempt must not be empty");
    }
    for (double b : opt.bler_per_attempt) {
        if (!(b >= 0.0 && b <= 1.0)) {
            throw InvalidInput("BLER per attempt must lie in [0, 1]");
        }
    }
    if (opt.n_cycles < 1) {
        throw InvalidInput("n_cycles must be >= 1");
    }
    int cycle_len = 0;
    if (opt.mode == ScheduleMode::ProposedVariable) {
        cycle_len = build_proposed_cycle(p, dir).size();
    } else {
        const auto legacy = build_legacy_cycle(p, dir);
        if (!legacy.feasible()) {
            throw InvalidInput("fixed-delay schedule has conflicts; nothing to simulate");
        }
        cycle_len = legacy.timeline.size();
    }

    std::mt19937_64 rng(opt.seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const std::size_t last = opt.bler_per_attempt.size() - 1;

    std::deque<int> pending;  // attempts already spent per waiting TB
    long long attempts = 0;
    long long retransmissions = 0;
    long long successes = 0;
    for (int c = 0; c < opt.n_cycles; ++c) {
        for (int slot = 0; slot < p.n_tbphc; ++slot) {
            int k = 0;
            if (!pending.empty()) {
                k = pending.front();
                pending.pop_front();
                ++retransmissions;
            }
            ++attempts;
            const double bler = opt.bler_per_attempt[std::min(static_cast<std::size_t>(k), last)];
            if (uniform() < bler) {
                pending.push_back(k + 1);
            } else {
                ++successes;
            }
        }
    }

    MonteCarloResult r;
    r.attempts = attempts;
    r.successes = successes;
    r.pending = static_cast<long long>(pending.size());
    const double slots = static_cast<double>(opt.n_cycles) * cycle_len;
    r.goodput_bps = static_cast<double>(successes) / slots * opt.tbs_bits / opt.t_tb_s;
    r.retransmission_rate = static_cast<double>(retransmissions) / static_cast<double>(attempts);
    return r;
}

}  // namespace ntnharq::scheduler
