#include <cmath>

#include "doctest.h"
#include "ntnharq/errors.hpp"
#include "ntnharq/metrics.hpp"
#include "ntnharq/scheduler.hpp"

using namespace ntnharq;
using namespace ntnharq::scheduler;
using harq::CycleParams;

namespace {

CycleParams fig4(GrantMode g = GrantMode::MTBG) {
    CycleParams p;
    p.n_tbphc = 2;
    p.rep_pdcch = 1;
    p.n_dg2d = 1;
    p.rep_pdsch = {4};
    p.dd2a_min = 3;
    p.rep_pucch = 1;
    p.n_switch = 1;
    p.grant_mode = g;
    return p;
}

CycleParams ul(int n, int pusch, int pdcch = 1, int sw = 1, int ug2d = 3) {
    CycleParams p;
    p.n_tbphc = n;
    p.rep_pusch = {pusch};
    p.rep_pdcch = pdcch;
    p.n_switch = sw;
    p.ug2d_min = ug2d;
    return p;
}

SubframeTimeline blank(int n) {
    SubframeTimeline t;
    t.slots.resize(static_cast<std::size_t>(n));
    t.cycle_boundaries = {0, n};
    return t;
}

void put(SubframeTimeline& t, int first, int len, Activity kind, std::optional<int> tb = {}) {
    for (int sf = first; sf < first + len; ++sf) {
        std::optional<int> harq;
        if (tb) harq = *tb - 1;
        t.slots[static_cast<std::size_t>(sf)].activities.push_back({kind, tb, harq});
    }
}

// Slot counting straight off a timeline, independent of the delay formulas.
int last_slot(const SubframeTimeline& t, Activity kind, int tb) {
    int last = -1;
    for (int i = 0; i < t.size(); ++i) {
        for (const auto& a : t.slots[static_cast<std::size_t>(i)].activities) {
            if (a.kind == kind && a.tb_index == tb) last = i;
        }
    }
    return last;
}

int first_slot(const SubframeTimeline& t, Activity kind, std::optional<int> tb) {
    for (int i = 0; i < t.size(); ++i) {
        for (const auto& a : t.slots[static_cast<std::size_t>(i)].activities) {
            if (a.kind == kind && a.tb_index == tb) return i;
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("activity names round-trip") {
    for (auto a : {Activity::RxPDCCH, Activity::RxPDSCH, Activity::TxPUCCH, Activity::TxPUSCH, Activity::Switch,
                   Activity::Idle}) {
        CHECK(activity_from_string(to_string(a)) == a);
    }
    CHECK_THROWS_AS(activity_from_string("Nope"), InvalidInput);
}

TEST_CASE("legacy cycle examples") {
    SUBCASE("overlap with n_rep 4 and DD2A 3") {
        const auto mtbg = build_legacy_cycle(fig4(), Direction::DL);
        REQUIRE(mtbg.report.conflicts.size() == 1);
        const auto& c = mtbg.report.conflicts.front();
        CHECK(c.kind == ConflictKind::Overlap);
        CHECK(c.sf_index == 9);
        CHECK(mtbg.timeline.at(9).has(Activity::TxPUCCH));
        CHECK(mtbg.timeline.at(9).has(Activity::RxPDSCH));
        CHECK(last_slot(mtbg.timeline, Activity::RxPDSCH, 2) == 9);
        CHECK(first_slot(mtbg.timeline, Activity::TxPUCCH, 1) == 9);

        // With one grant per TB the second grant also lands inside TB 1's data.
        const auto stbg = build_legacy_cycle(fig4(GrantMode::STBG), Direction::DL);
        CHECK_FALSE(stbg.feasible());
        bool ack_hit = false;
        for (const auto& k : stbg.report.conflicts) {
            ack_hit = ack_hit || (k.sf_index == 9 && k.kind == ConflictKind::Overlap);
        }
        CHECK(ack_hit);
    }
    SUBCASE("single UL TB") {
        const auto c = build_legacy_cycle(ul(1, 12), Direction::UL);
        CHECK(c.feasible());
        CHECK(c.timeline.size() == 17);
    }
    SUBCASE("short data leaves room") {
        auto p = fig4();
        p.rep_pdsch = {1};
        CHECK(build_legacy_cycle(p, Direction::DL).feasible());
        p.grant_mode = GrantMode::STBG;
        CHECK(build_legacy_cycle(p, Direction::DL).feasible());
    }
}

TEST_CASE("legacy single-TB cycles match the fixed-delay closed form") {
    for (int reps : {1, 2, 4, 12, 24}) {
        for (int sw : {1, 2}) {
            for (int delay : {3, 8}) {
                auto u = ul(1, reps, 1, sw, delay);
                const auto cu = build_legacy_cycle(u, Direction::UL);
                CHECK(cu.feasible());
                CHECK(cu.timeline.size() == metrics::cycle_length_closed_form(u, Direction::UL, ScheduleMode::LegacyFixed));

                CycleParams d;
                d.rep_pdsch = {reps};
                d.n_switch = sw;
                d.dd2a_min = delay;
                const auto cd = build_legacy_cycle(d, Direction::DL);
                CHECK(cd.feasible());
                CHECK(cd.timeline.size() == metrics::cycle_length_closed_form(d, Direction::DL, ScheduleMode::LegacyFixed));
            }
        }
    }
}

TEST_CASE("proposed cycle examples") {
    CycleParams d;
    d.n_tbphc = 4;
    d.grant_mode = GrantMode::MTBG;
    d.rep_pdsch = {4};
    const auto dl = build_proposed_cycle(d, Direction::DL);
    CHECK(dl.size() == 24);
    CHECK(validate(dl, d).empty());
    CHECK(dl.count(Activity::RxPDCCH) == 1);

    const auto u = ul(5, 12);
    const auto t = build_proposed_cycle(u, Direction::UL);
    CHECK(t.size() == 67);
    CHECK(validate(t, u).empty());
    CHECK(t.count(Activity::RxPDCCH) == 5);
}

TEST_CASE("delays counted off the timeline") {
    SUBCASE("DL, four TBs of 4 repetitions") {
        CycleParams d;
        d.n_tbphc = 4;
        d.rep_pdsch = {4};
        d.grant_mode = GrantMode::MTBG;
        const auto t = build_proposed_cycle(d, Direction::DL);
        CHECK(first_slot(t, Activity::TxPUCCH, 2) - last_slot(t, Activity::RxPDSCH, 2) - 1 == 10);
        CHECK(first_slot(t, Activity::TxPUCCH, 4) - last_slot(t, Activity::RxPDSCH, 4) - 1 == 4);
    }
    SUBCASE("UL, five TBs of 12 repetitions") {
        const auto t = build_proposed_cycle(ul(5, 12), Direction::UL);
        CHECK(first_slot(t, Activity::TxPUSCH, 1) - last_slot(t, Activity::RxPDCCH, 1) - 1 == 5);
        CHECK(first_slot(t, Activity::TxPUSCH, 3) - last_slot(t, Activity::RxPDCCH, 3) - 1 == 27);
    }
    SUBCASE("grid: realized delays equal formula delays plus a common guard") {
        for (int n = 1; n <= 8; ++n) {
            for (int reps : {1, 2, 4, 12, 24}) {
                for (int sw : {1, 2}) {
                    for (auto g : {GrantMode::STBG, GrantMode::MTBG}) {
                        CycleParams d;
                        d.n_tbphc = n;
                        d.rep_pdsch = {reps};
                        d.n_switch = sw;
                        d.grant_mode = g;
                        const auto t = build_proposed_cycle(d, Direction::DL);
                        const auto plan = harq::delay_plan(d, Direction::DL);
                        const int pad = realized_delays(d, Direction::DL).delays[0] - plan.delays[0];
                        CHECK(pad >= 0);
                        for (int j = 1; j <= n; ++j) {
                            const int counted =
                                first_slot(t, Activity::TxPUCCH, j) - last_slot(t, Activity::RxPDSCH, j) - 1;
                            CHECK(counted == harq::dd2a_variable(d, j) + pad);
                            CHECK(counted >= d.dd2a_min);
                        }

                        auto u = ul(n, reps, 1, sw);
                        u.grant_mode = g;
                        const auto tu = build_proposed_cycle(u, Direction::UL);
                        const int upad =
                            realized_delays(u, Direction::UL).delays[0] - harq::delay_plan(u, Direction::UL).delays[0];
                        for (int j = 1; j <= n; ++j) {
                            const int grant_end = g == GrantMode::STBG ? last_slot(tu, Activity::RxPDCCH, j)
                                                                        : first_slot(tu, Activity::RxPDCCH, {});
                            const int counted = first_slot(tu, Activity::TxPUSCH, j) - grant_end - 1;
                            CHECK(counted == harq::ug2d_variable(u, j) + upad);
                            CHECK(counted >= u.ug2d_min);
                        }
                    }
                }
            }
        }
    }
    SUBCASE("bundled ACKs") {
        for (int n = 1; n <= 8; ++n) {
            for (int nb : {1, 2, 4}) {
                CycleParams d;
                d.n_tbphc = n;
                d.rep_pdsch = {4};
                d.bundling = Bundling::Bundled;
                d.n_bundle = nb;
                const auto t = build_proposed_cycle(d, Direction::DL);
                CHECK(t.count(Activity::TxPUCCH) == (n + nb - 1) / nb);
                const int pad = realized_delays(d, Direction::DL).delays[0] - harq::dd2a_bundled(d, 1);
                for (int j = 1; j <= n; ++j) {
                    const int head = ((j - 1) / nb) * nb + 1;
                    const int counted = first_slot(t, Activity::TxPUCCH, head) - last_slot(t, Activity::RxPDSCH, j) - 1;
                    CHECK(counted == harq::dd2a_bundled(d, j) + pad);
                }
            }
        }
    }
}

TEST_CASE("single-TB proposed cycle is the legacy cycle plus a switch block") {
    for (int reps : {1, 2, 4, 12, 24}) {
        for (int sw : {1, 2}) {
            auto u = ul(1, reps, 1, sw);
            const auto legacy = build_legacy_cycle(u, Direction::UL).timeline;
            const auto proposed = build_proposed_cycle(u, Direction::UL);
            REQUIRE(proposed.size() == legacy.size() + sw);
            for (int i = 0; i < legacy.size(); ++i) {
                CHECK(proposed.slots[static_cast<std::size_t>(i)] == legacy.slots[static_cast<std::size_t>(i)]);
            }

            CycleParams d;
            d.rep_pdsch = {reps};
            d.n_switch = sw;
            const auto dleg = build_legacy_cycle(d, Direction::DL).timeline;
            const auto dprop = build_proposed_cycle(d, Direction::DL);
            REQUIRE(dprop.size() == dleg.size() + sw);
            for (int i = 0; i < dleg.size(); ++i) {
                CHECK(dprop.slots[static_cast<std::size_t>(i)] == dleg.slots[static_cast<std::size_t>(i)]);
            }
        }
    }
}

TEST_CASE("UL proposed cycles are packed when the grants cover the minimum delay") {
    for (int n = 1; n <= 8; ++n) {
        for (int reps : {1, 2, 4, 12, 24}) {
            for (int sw : {1, 2}) {
                const auto u = ul(n, reps, 1, sw);
                if ((n - 1) * u.rep_pdcch + sw < u.ug2d_min) {
                    continue;
                }
                const auto t = build_proposed_cycle(u, Direction::UL);
                int first = -1;
                int last = -1;
                for (int i = 0; i < t.size(); ++i) {
                    if (!t.slots[static_cast<std::size_t>(i)].idle()) {
                        if (first < 0) first = i;
                        last = i;
                    }
                }
                for (int i = first; i <= last; ++i) {
                    CHECK_FALSE(t.slots[static_cast<std::size_t>(i)].idle());
                }
            }
        }
    }
}

TEST_CASE("control repetitions above data repetitions trip the guard") {
    CycleParams d;
    d.n_tbphc = 2;
    d.rep_pdsch = {1};
    d.rep_pucch = 8;
    d.dd2a_min = 3;
    CHECK_THROWS_AS(build_proposed_cycle(d, Direction::DL), MinDelayViolation);
}

TEST_CASE("validate on hand-built timelines") {
    const auto p = fig4();
    SUBCASE("overlap of TB 2 data and TB 1 ACK") {
        auto t = blank(15);
        put(t, 0, 1, Activity::RxPDCCH);
        put(t, 2, 4, Activity::RxPDSCH, 1);
        put(t, 6, 4, Activity::RxPDSCH, 2);
        put(t, 9, 1, Activity::TxPUCCH, 1);
        put(t, 12, 1, Activity::Switch);
        put(t, 13, 1, Activity::TxPUCCH, 2);
        put(t, 14, 1, Activity::Switch);
        const auto r = validate(t, p);
        REQUIRE(r.conflicts.size() == 1);
        CHECK(r.conflicts[0].sf_index == 9);
        CHECK(r.conflicts[0].kind == ConflictKind::Overlap);
        CHECK(r.conflicts[0].tb_indices == std::vector<int>{2, 1});
    }
    SUBCASE("ACK two subframes after data") {
        auto q = p;
        q.n_tbphc = 1;
        auto t = blank(10);
        put(t, 0, 1, Activity::RxPDCCH);
        put(t, 2, 4, Activity::RxPDSCH, 1);
        put(t, 7, 1, Activity::Switch);
        put(t, 8, 1, Activity::TxPUCCH, 1);
        put(t, 9, 1, Activity::Switch);
        const auto r = validate(t, q);
        REQUIRE(r.conflicts.size() == 1);
        CHECK(r.conflicts[0].kind == ConflictKind::MinDelay);
        CHECK(r.conflicts[0].sf_index == 8);
    }
    SUBCASE("missing switch slots") {
        auto q = p;
        q.n_tbphc = 1;
        q.dd2a_min = 0;
        auto t = blank(4);
        put(t, 0, 1, Activity::RxPDCCH);
        put(t, 1, 1, Activity::RxPDSCH, 1);
        put(t, 2, 1, Activity::TxPUCCH, 1);
        put(t, 3, 1, Activity::Switch);
        const auto r = validate(t, q);
        REQUIRE(r.conflicts.size() == 1);
        CHECK(r.conflicts[0].kind == ConflictKind::MissingSwitch);
        CHECK(r.conflicts[0].sf_index == 2);

        // Nothing switches back before the next cycle's grant.
        auto w = blank(5);
        put(w, 0, 1, Activity::RxPDCCH);
        put(w, 1, 1, Activity::RxPDSCH, 1);
        put(w, 2, 1, Activity::Switch);
        put(w, 3, 1, Activity::TxPUCCH, 1);
        put(w, 4, 1, Activity::Idle);
        w.slots[4].activities.clear();
        const auto rw = validate(w, q);
        REQUIRE(rw.conflicts.size() == 1);
        CHECK(rw.conflicts[0].kind == ConflictKind::MissingSwitch);
        CHECK(rw.conflicts[0].sf_index == 0);
    }
}

TEST_CASE("base-station view") {
    const auto u = ul(3, 4);
    const auto t = build_proposed_cycle(u, Direction::UL);
    SUBCASE("zero RTT keeps every slot") {
        const auto b = bs_view(t, 0.0);
        CHECK(b.perspective == Perspective::BS);
        CHECK(b.first_sf == t.first_sf);
        CHECK(b.slots == t.slots);
    }
    SUBCASE("one-way delay of 8 subframes") {
        const auto b = bs_view(t, 16.0);
        for (int i = 0; i < t.size(); ++i) {
            for (const auto& a : t.slots[static_cast<std::size_t>(i)].activities) {
                const int expect = is_tx(a.kind) ? i + 8 : is_rx(a.kind) ? i - 8 : i;
                const auto& s = b.at(expect).activities;
                CHECK(std::find(s.begin(), s.end(), a) != s.end());
            }
        }
    }
    SUBCASE("grant at UE subframe 10 with 20 ms RTT") {
        auto g = blank(12);
        put(g, 10, 1, Activity::RxPDCCH, 1);
        const auto b = bs_view(g, 20.0);
        CHECK(b.at(0).has(Activity::RxPDCCH));
    }
    SUBCASE("fractional RTT rounds the shift up") {
        const auto b = bs_view(t, 20.06);
        CHECK(b.first_sf == -11);
    }
    SUBCASE("BS side has no same-direction double booking") {
        for (double rtt : {0.0, 7.0, 20.06, 34.22}) {
            CHECK(validate(bs_view(t, rtt), u).empty());
        }
    }
    CHECK_THROWS_AS(bs_view(t, -1.0), InvalidInput);
    CHECK_THROWS_AS(bs_view(bs_view(t, 2.0), 2.0), InvalidInput);
}

TEST_CASE("repeat cycles") {
    const auto t = build_proposed_cycle(ul(2, 4), Direction::UL);
    const auto r = repeat_cycles(t, 3);
    CHECK(r.size() == 3 * t.size());
    CHECK(r.cycle_boundaries == std::vector<int>{0, t.size(), 2 * t.size(), 3 * t.size()});
    CHECK(validate(r, ul(2, 4)).empty());
    CHECK_THROWS_AS(repeat_cycles(t, 0), InvalidInput);
}

TEST_CASE("timeline CSV") {
    auto t = blank(3);
    put(t, 0, 1, Activity::RxPDCCH, 1);
    put(t, 2, 1, Activity::TxPUSCH, 1);
    put(t, 2, 1, Activity::RxPDCCH);
    CHECK(export_csv(t) ==
          "index,perspective,activity,tb_index,harq_id\n"
          "0,UE,RxPDCCH,1,0\n"
          "1,UE,Idle,,\n"
          "2,UE,TxPUSCH,1,0\n"
          "2,UE,RxPDCCH,,\n");
    CHECK(import_csv(export_csv(t)) == t);

    const auto legacy = build_legacy_cycle(fig4(), Direction::DL).timeline;
    CHECK(import_csv(export_csv(legacy)) == legacy);
    const auto b = bs_view(build_proposed_cycle(ul(4, 12), Direction::UL), 20.06);
    const auto back = import_csv(export_csv(b));
    CHECK(back.slots == b.slots);
    CHECK(back.first_sf == b.first_sf);
    CHECK(back.perspective == Perspective::BS);
    CHECK_THROWS_AS(import_csv("0,UE,Idle,,\n5,UE,Idle,,\n"), InvalidInput);
}

TEST_CASE("Monte Carlo goodput") {
    const auto u = ul(6, 12);
    const double t_tb = 1e-3;
    const double r = metrics::throughput_bps(metrics::suf_closed_form(u, Direction::UL, ScheduleMode::ProposedVariable),
                                             504, t_tb);
    MonteCarloOptions o;
    o.n_cycles = 500;
    o.bler_per_attempt = {0.0};
    SUBCASE("error-free equals the analytical rate") {
        const auto m = monte_carlo_goodput(u, Direction::UL, o);
        CHECK(m.goodput_bps == r);
        CHECK(m.retransmission_rate == 0.0);
        CHECK(m.pending == 0);
    }
    SUBCASE("always failing delivers nothing") {
        o.bler_per_attempt = {1.0, 1.0};
        const auto m = monte_carlo_goodput(u, Direction::UL, o);
        CHECK(m.goodput_bps == 0.0);
        CHECK(m.successes == 0);
    }
    SUBCASE("one retransmission at 10 percent") {
        o.bler_per_attempt = {0.1, 0.0};
        o.n_cycles = 10000;
        const auto m = monte_carlo_goodput(u, Direction::UL, o);
        const double p = 1.0 / 1.1;
        const double n = static_cast<double>(o.n_cycles) * u.n_tbphc;
        CHECK(std::abs(m.goodput_bps / r - p) <= 2.576 * std::sqrt(p * (1 - p) / n));
        CHECK(m.retransmission_rate == doctest::Approx(1 - p).epsilon(0.05));
    }
    SUBCASE("seeded runs repeat exactly") {
        o.bler_per_attempt = {0.3, 0.2, 0.1};
        o.seed = 99;
        CHECK(monte_carlo_goodput(u, Direction::UL, o) == monte_carlo_goodput(u, Direction::UL, o));
        auto other = o;
        other.seed = 100;
        CHECK_FALSE(monte_carlo_goodput(u, Direction::UL, o) == monte_carlo_goodput(u, Direction::UL, other));
    }
    SUBCASE("legacy mode uses the fixed-delay cycle") {
        o.mode = ScheduleMode::LegacyFixed;
        const auto m = monte_carlo_goodput(ul(1, 12), Direction::UL, o);
        CHECK(m.goodput_bps == metrics::throughput_bps(1.0 / 17, 504, t_tb));
        CHECK_THROWS_AS(monte_carlo_goodput(fig4(), Direction::DL, o), InvalidInput);
    }
    SUBCASE("bad inputs") {
        o.bler_per_attempt = {1.5};
        CHECK_THROWS_AS(monte_carlo_goodput(u, Direction::UL, o), InvalidInput);
        o.bler_per_attempt = {};
        CHECK_THROWS_AS(monte_carlo_goodput(u, Direction::UL, o), InvalidInput);
        o.bler_per_attempt = {0.1};
        o.n_cycles = 0;
        CHECK_THROWS_AS(monte_carlo_goodput(u, Direction::UL, o), InvalidInput);
    }
}
