#include "doctest.h"

#include <cmath>
#include <random>

#include "avxfreq/simengine.hpp"

using namespace avxfreq;

namespace {

WorkloadTrace make_trace(std::vector<TraceSegment> segs) { return WorkloadTrace(std::move(segs)); }

SimConfig gold_cfg(int cores) {
    SimConfig cfg;
    cfg.freq = FrequencyTable::preset("gold6130");
    cfg.costs = TransitionCostTable::preset("gold6130-measured");
    cfg.active_cores = cores;
    return cfg;
}

// Test-only policies for poking at engine contracts.
struct ArmOnEveryStart : Policy {
    double delay;
    explicit ArmOnEveryStart(double d) : delay(d) {}
    std::string name() const override { return "test:arm-on-start"; }
    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext& ctx) const override {
        if (ev.kind == PolicyEvent::Kind::SegmentStart &&
            level_index(ctx.current) > level_index(ctx.required))
            return PolicyAction::arm_timer(delay);
        if (ev.kind == PolicyEvent::Kind::TimerFired)
            return PolicyAction::upclock_now();
        return PolicyAction::hold();
    }
};

struct NegativeArm : Policy {
    std::string name() const override { return "test:negative-arm"; }
    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext&) const override {
        if (ev.kind == PolicyEvent::Kind::RegionEnd)
            return PolicyAction::arm_timer(-1.0);
        return PolicyAction::hold();
    }
};

struct UpclockWhenLevelMatches : Policy {
    std::string name() const override { return "test:bogus-upclock"; }
    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext&) const override {
        if (ev.kind == PolicyEvent::Kind::SegmentStart)
            return PolicyAction::upclock_now();
        return PolicyAction::hold();
    }
};

} // namespace

TEST_CASE("scalar-only trace runs at full speed with no transitions") {
    WorkloadTrace tr = make_trace({{SegmentClass::Scalar, 777.5, false}});
    SimConfig cfg;
    for (const char* spec : {"never", "fixed:670", "immediate", "hint:670"}) {
        auto p = make_policy(spec, cfg.freq, cfg.costs);
        SimReport rep = simulate(tr, *p, cfg);
        CHECK(rep.total_wall_us == doctest::Approx(777.5).epsilon(1e-12));
        CHECK(rep.transition_count() == 0);
        CHECK(rep.transition_overhead_us == 0.0);
        CHECK(rep.residency_us[0] == doctest::Approx(777.5).epsilon(1e-12));
        CHECK(rep.residency_us[1] == 0.0);
        CHECK(rep.residency_us[2] == 0.0);
    }
}

TEST_CASE("wide gap under a fixed timeout, wall-clock accounting") {
    // [avx512 100][scalar 2000] on the single-bucket table, flat 16 us stalls,
    // fixed:670. Forced drop, 100 us dilated by 3.1/2.4, the timer burns
    // 670 us of wall time at 2.4 GHz, the upclock stalls again, and the rest
    // of the gap runs at full speed.
    WorkloadTrace tr = make_trace(
        {{SegmentClass::Avx512Heavy, 100.0, false}, {SegmentClass::Scalar, 2000.0, false}});
    SimConfig cfg; // i9-7940X + flat16 + wall clock
    auto p = make_policy("fixed:670", cfg.freq, cfg.costs);
    SimReport rep = simulate(tr, *p, cfg);

    double gap_ref_spent_waiting = 670.0 * 2.4 / 3.1;
    double expect = 16.0 + 100.0 * 3.1 / 2.4 + 670.0 + 16.0 + (2000.0 - gap_ref_spent_waiting);
    CHECK(expect == doctest::Approx(2312.4569892473117).epsilon(1e-12));
    CHECK(rep.total_wall_us == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rep.trace_total_ref_us == doctest::Approx(2100.0).epsilon(1e-12));
    CHECK(rep.transitions[0][2] == 1);
    CHECK(rep.transitions[2][0] == 1);
    CHECK(rep.transition_count() == 2);
    CHECK(rep.transition_overhead_us == doctest::Approx(32.0));
    CHECK(rep.residency_us[2] == doctest::Approx(100.0 * 3.1 / 2.4 + 670.0).epsilon(1e-12));
    CHECK(rep.residency_us[0] ==
          doctest::Approx(2000.0 - gap_ref_spent_waiting).epsilon(1e-12));
    CHECK(rep.residency_us[1] == 0.0);

    // Serialized transition counts list only the pairs that happened.
    nlohmann::json j = rep.to_json();
    CHECK(j["transitions"].contains("0->2"));
    CHECK(j["transitions"].contains("2->0"));
    CHECK_FALSE(j["transitions"].contains("1->2"));
}

TEST_CASE("the same run under trace-time accounting waits longer on the wall") {
    // The 670 us timer now measures progress through the recorded trace, which
    // accumulates at the reduced frequency, so the wall wait dilates to
    // 670 * 3.1 / 2.4 and only 1330 us of the gap runs fast.
    WorkloadTrace tr = make_trace(
        {{SegmentClass::Avx512Heavy, 100.0, false}, {SegmentClass::Scalar, 2000.0, false}});
    SimConfig cfg;
    cfg.timeout_mode = TimeoutMode::TraceTime;
    auto p = make_policy("fixed:670", cfg.freq, cfg.costs);
    SimReport rep = simulate(tr, *p, cfg);

    double expect = 16.0 + 100.0 * 3.1 / 2.4 + 670.0 * 3.1 / 2.4 + 16.0 + 1330.0;
    CHECK(expect == doctest::Approx(2356.5833333333335).epsilon(1e-12));
    CHECK(rep.total_wall_us == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rep.transitions[2][0] == 1);
}

TEST_CASE("a segment that needs the held level cancels the pending timer") {
    WorkloadTrace tr = make_trace({{SegmentClass::Avx512Heavy, 100.0, false},
                                   {SegmentClass::Scalar, 300.0, false},
                                   {SegmentClass::Avx512Heavy, 50.0, false}});
    SimConfig cfg;
    auto p = make_policy("fixed:670", cfg.freq, cfg.costs);
    SimReport rep = simulate(tr, *p, cfg);
    // The 300 us gap dilates to 387.5 us, short of the 670 us deadline; the
    // next avx512 segment then cancels the timer, so the license never moves.
    CHECK(rep.total_wall_us == doctest::Approx(16.0 + 450.0 * 3.1 / 2.4).epsilon(1e-12));
    CHECK(rep.transition_count() == 1);
    CHECK(rep.transitions[0][2] == 1);
    CHECK(rep.residency_us[0] == 0.0);
}

TEST_CASE("a pending timer survives into later segments of the same gap") {
    WorkloadTrace tr = make_trace({{SegmentClass::Avx512Heavy, 100.0, false},
                                   {SegmentClass::Scalar, 200.0, false},
                                   {SegmentClass::Scalar, 600.0, false}});
    SimConfig cfg;
    auto p = make_policy("fixed:670", cfg.freq, cfg.costs);
    SimReport rep = simulate(tr, *p, cfg);
    // One region end, one timer, one upclock; the fire lands inside the
    // second scalar segment.
    double expect = 16.0 + 100.0 * 3.1 / 2.4 + 670.0 + 16.0 + (800.0 - 670.0 * 2.4 / 3.1);
    CHECK(rep.total_wall_us == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rep.transitions[2][0] == 1);
    CHECK(rep.transition_count() == 2);
}

TEST_CASE("a forced drop clears the timer and stacks down-transitions") {
    WorkloadTrace tr = make_trace({{SegmentClass::Avx2Heavy, 100.0, false},
                                   {SegmentClass::Scalar, 100.0, false},
                                   {SegmentClass::Avx512Heavy, 100.0, false}});
    SimConfig cfg;
    auto p = make_policy("fixed:670", cfg.freq, cfg.costs);
    SimReport rep = simulate(tr, *p, cfg);
    double expect = 16.0 + 100.0 * 3.1 / 2.7 + 100.0 * 3.1 / 2.7 + 16.0 + 100.0 * 3.1 / 2.4;
    CHECK(rep.total_wall_us == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rep.transitions[0][1] == 1);
    CHECK(rep.transitions[1][2] == 1);
    CHECK(rep.transition_count() == 2);
    CHECK(rep.residency_us[2] == doctest::Approx(100.0 * 3.1 / 2.4).epsilon(1e-12));
}

TEST_CASE("hints cut the wait short; without hints the policy matches fixed") {
    WorkloadTrace web = make_trace({{SegmentClass::Avx512Heavy, 20.0, false},
                                    {SegmentClass::Scalar, 500.0, true},
                                    {SegmentClass::Avx512Heavy, 20.0, false},
                                    {SegmentClass::Scalar, 300.0, false}});
    SimConfig cfg;
    auto hint = make_policy("hint:670", cfg.freq, cfg.costs);
    auto fixed = make_policy("fixed:670", cfg.freq, cfg.costs);

    SimReport hrep = simulate(web, *hint, cfg);
    double hint_expect = 16.0 + 20.0 * 3.1 / 2.4 + 16.0 + 500.0 + 16.0 + 20.0 * 3.1 / 2.4 + 300.0 * 3.1 / 2.4;
    CHECK(hrep.total_wall_us == doctest::Approx(hint_expect).epsilon(1e-12));
    CHECK(hrep.hints_taken == 1);
    CHECK(hrep.transition_count() == 3);

    SimReport frep = simulate(web, *fixed, cfg);
    // Neither gap outlasts 670 us of wall time at 2.4 GHz, so the fixed
    // policy never recovers and the whole trace runs dilated.
    CHECK(frep.total_wall_us == doctest::Approx(16.0 + 840.0 * 3.1 / 2.4).epsilon(1e-12));
    CHECK(frep.transition_count() == 1);
    CHECK(frep.hints_taken == 0);
    CHECK(hrep.total_wall_us < frep.total_wall_us);

    // On a hint-free trace the two policies act identically.
    WorkloadTrace plain = make_trace(
        {{SegmentClass::Avx512Heavy, 100.0, false}, {SegmentClass::Scalar, 2000.0, false}});
    CHECK(simulate(plain, *hint, cfg).total_wall_us ==
          simulate(plain, *fixed, cfg).total_wall_us);
}

TEST_CASE("a hint arriving when nothing is held is ignored") {
    WorkloadTrace tr = make_trace({{SegmentClass::Scalar, 100.0, true}});
    SimConfig cfg;
    auto hint = make_policy("hint:670", cfg.freq, cfg.costs);
    SimReport rep = simulate(tr, *hint, cfg);
    CHECK(rep.hints_taken == 0);
    CHECK(rep.total_wall_us == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("break-even timeout on measured stalls, derived from first principles") {
    WorkloadTrace tr = make_trace(
        {{SegmentClass::Avx512Heavy, 100.0, false}, {SegmentClass::Scalar, 1000.0, false}});
    SimConfig cfg = gold_cfg(5);
    auto p = make_policy("breakeven", cfg.freq, cfg.costs);
    SimReport rep = simulate(tr, *p, cfg);

    // 5 active cores on the mid bucket: 3.4 GHz scalar, 2.4 GHz at level 2.
    double up = 9.36885, down = 22.7115; // measured 2->0 and 0->2 stalls, 5 cores
    double t_o = up + down;
    double t_be = t_o * 3.4 / (3.4 - 2.4);
    double expect = down + 100.0 * 3.4 / 2.4 + t_be + up + (1000.0 - t_be * 2.4 / 3.4);
    CHECK(rep.total_wall_us == doctest::Approx(expect).epsilon(1e-9));
    CHECK(rep.transitions[2][0] == 1);
}

TEST_CASE("oracle upclocks exactly when the gap reaches the threshold") {
    SimConfig cfg = gold_cfg(5);
    auto oracle = make_policy("oracle", cfg.freq, cfg.costs);
    BreakEvenTable table(cfg.freq, cfg.costs, 1, 16);
    double g_star = table.lookup(LicenseLevel::L2, LicenseLevel::L0, 5).gap_threshold_us;
    CHECK(g_star == doctest::Approx(76.99284).epsilon(1e-5));

    auto run_gap = [&](double gap) {
        WorkloadTrace tr = make_trace({{SegmentClass::Avx512Heavy, 50.0, false},
                                       {SegmentClass::Scalar, gap, false},
                                       {SegmentClass::Avx512Heavy, 50.0, false}});
        return simulate(tr, *oracle, cfg);
    };

    SimReport above = run_gap(g_star + 0.5);
    CHECK(above.transitions[2][0] == 1);
    CHECK(above.transitions[0][2] == 2); // re-entry is forced and paid for

    SimReport below = run_gap(g_star - 0.5);
    CHECK(below.transitions[2][0] == 0);
    CHECK(below.transitions[0][2] == 1);

    SimReport tie = run_gap(g_star);
    CHECK(tie.transitions[2][0] == 1);

    // Gaps split across segments count as one region for the oracle.
    WorkloadTrace split = make_trace({{SegmentClass::Avx512Heavy, 50.0, false},
                                      {SegmentClass::Scalar, g_star * 0.6, false},
                                      {SegmentClass::Scalar, g_star * 0.6, false},
                                      {SegmentClass::Avx512Heavy, 50.0, false}});
    CHECK(simulate(split, *oracle, cfg).transitions[2][0] == 1);
}

TEST_CASE("oracle never loses to the simple strategies on a single gap") {
    SimConfig cfg = gold_cfg(3);
    auto oracle = make_policy("oracle", cfg.freq, cfg.costs);
    auto never = make_policy("never", cfg.freq, cfg.costs);
    auto immediate = make_policy("immediate", cfg.freq, cfg.costs);
    auto fixed = make_policy("fixed:670", cfg.freq, cfg.costs);

    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> gap(1.0, 3000.0);
    for (int i = 0; i < 60; ++i) {
        WorkloadTrace tr = make_trace({{SegmentClass::Avx512Heavy, 50.0, false},
                                       {SegmentClass::Scalar, gap(rng), false},
                                       {SegmentClass::Avx512Heavy, 50.0, false}});
        double w_oracle = simulate(tr, *oracle, cfg).total_wall_us;
        CHECK(w_oracle <= simulate(tr, *never, cfg).total_wall_us + 1e-9);
        CHECK(w_oracle <= simulate(tr, *immediate, cfg).total_wall_us + 1e-9);
        CHECK(w_oracle <= simulate(tr, *fixed, cfg).total_wall_us + 1e-9);
    }
}

TEST_CASE("never and immediate bracket the residency extremes") {
    WorkloadTrace tr = make_trace(
        {{SegmentClass::Avx512Heavy, 100.0, false}, {SegmentClass::Scalar, 900.0, false}});
    SimConfig cfg;

    SimReport stay = simulate(tr, *make_policy("never", cfg.freq, cfg.costs), cfg);
    CHECK(stay.residency_us[0] == 0.0);
    CHECK(stay.residency_us[2] == doctest::Approx(1000.0 * 3.1 / 2.4).epsilon(1e-12));
    CHECK(stay.transition_count() == 1);

    SimReport eager = simulate(tr, *make_policy("immediate", cfg.freq, cfg.costs), cfg);
    CHECK(eager.residency_us[0] == doctest::Approx(900.0).epsilon(1e-12));
    CHECK(eager.residency_us[2] == doctest::Approx(100.0 * 3.1 / 2.4).epsilon(1e-12));
    CHECK(eager.transition_count() == 2);
    CHECK(eager.transition_overhead_us == doctest::Approx(32.0));
}

TEST_CASE("rearming replaces the pending timer instead of stacking") {
    WorkloadTrace tr = make_trace({{SegmentClass::Avx512Heavy, 10.0, false},
                                   {SegmentClass::Scalar, 60.0, false},
                                   {SegmentClass::Scalar, 1000.0, false}});
    SimConfig cfg;
    ArmOnEveryStart p(100.0);
    SimReport rep = simulate(tr, p, cfg);
    // The first arm (at the 60 us segment) would fire 100 us in, but that
    // segment only lasts 77.5 us of wall time; the second arm replaces it and
    // fires 100 us into the long segment.
    double expect = 16.0 + 10.0 * 3.1 / 2.4 + 60.0 * 3.1 / 2.4 + 100.0 + 16.0 +
                    (1000.0 - 100.0 * 2.4 / 3.1);
    CHECK(rep.total_wall_us == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rep.transitions[2][0] == 1);
}

TEST_CASE("engine rejects contract-breaking policy actions") {
    SimConfig cfg;
    WorkloadTrace tr = make_trace(
        {{SegmentClass::Avx512Heavy, 10.0, false}, {SegmentClass::Scalar, 100.0, false}});
    NegativeArm neg;
    CHECK_THROWS_AS(simulate(tr, neg, cfg), ContractError);
    UpclockWhenLevelMatches bogus;
    CHECK_THROWS_AS(simulate(tr, bogus, cfg), ContractError);
}

TEST_CASE("config validation and serialization") {
    SimConfig cfg;
    cfg.active_cores = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.active_cores = 15; // the single-bucket table tops out at 14
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.active_cores = 14;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.ref_freq_ghz() == doctest::Approx(3.1));

    cfg.timeout_mode = TimeoutMode::TraceTime;
    nlohmann::json j = cfg.to_json();
    CHECK(j["timeout_mode"] == "trace");
    CHECK(j["active_cores"] == 14);
    CHECK(j["f_ref_ghz"].get<double>() == doctest::Approx(3.1));
    CHECK(std::string(to_string(TimeoutMode::WallClock)) == "wall");
}

TEST_CASE("timeline recording is opt-in and tells the transition story") {
    WorkloadTrace tr = make_trace(
        {{SegmentClass::Avx512Heavy, 100.0, false}, {SegmentClass::Scalar, 2000.0, false}});
    SimConfig cfg;
    auto p = make_policy("fixed:670", cfg.freq, cfg.costs);
    CHECK(simulate(tr, *p, cfg).timeline.empty());

    cfg.record_timeline = true;
    SimReport rep = simulate(tr, *p, cfg);
    REQUIRE(rep.timeline.size() >= 3);
    CHECK(rep.timeline.front().kind == "downclock");
    CHECK(rep.timeline.front().wall_us == 0.0);
    bool saw_up = false;
    for (const auto& ev : rep.timeline)
        if (ev.kind == "upclock") {
            saw_up = true;
            CHECK(ev.from == LicenseLevel::L2);
            CHECK(ev.to == LicenseLevel::L0);
        }
    CHECK(saw_up);
}

TEST_CASE("invariants hold across random traces, policies, modes and tables") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<int> n_segs(1, 10);
    std::uniform_int_distribution<int> cls_pick(0, 2);
    std::uniform_real_distribution<double> dur(0.5, 1500.0);
    std::bernoulli_distribution coin(0.25);

    SimConfig bases[2] = {SimConfig{}, gold_cfg(1)};
    const char* specs[] = {"fixed:670", "fixed:25", "breakeven", "hint:670",
                           "oracle", "never", "immediate"};

    for (int round = 0; round < 200; ++round) {
        SimConfig cfg = bases[rng() % 2];
        cfg.active_cores = 1 + static_cast<int>(rng() % 8);
        cfg.timeout_mode = (rng() % 2) ? TimeoutMode::WallClock : TimeoutMode::TraceTime;
        std::vector<TraceSegment> segs;
        int n = n_segs(rng);
        for (int i = 0; i < n; ++i) {
            TraceSegment s;
            s.cls = static_cast<SegmentClass>(cls_pick(rng));
            s.dur_ref_us = dur(rng);
            s.hint = s.cls == SegmentClass::Scalar && coin(rng);
            segs.push_back(s);
        }
        WorkloadTrace tr = make_trace(segs);
        auto policy = make_policy(specs[rng() % std::size(specs)], cfg.freq, cfg.costs);
        SimReport rep = simulate(tr, *policy, cfg);

        // Time is conserved: every wall microsecond is either residency at
        // some level or transition stall.
        double accounted = rep.residency_us[0] + rep.residency_us[1] + rep.residency_us[2] +
                           rep.transition_overhead_us;
        CHECK(rep.total_wall_us == doctest::Approx(accounted).epsilon(1e-9));
        CHECK(rep.trace_total_ref_us == doctest::Approx(tr.total_ref_us()).epsilon(1e-12));

        // No run beats the frictionless lower bound where every segment gets
        // exactly the frequency it demands and transitions are free.
        double f_ref = cfg.ref_freq_ghz();
        double bound = 0.0;
        for (const auto& s : segs)
            bound += dilate(s.dur_ref_us, f_ref,
                            cfg.freq.freq_ghz(cfg.active_cores, required_level(s.cls)));
        CHECK(rep.total_wall_us >= bound - 1e-9);

        // Rerunning the same inputs reproduces the report byte for byte.
        SimReport again = simulate(tr, *policy, cfg);
        CHECK(rep.to_json().dump() == again.to_json().dump());
    }
}

TEST_CASE("single-gap saving of an eager upclock over the measured hold") {
    SimConfig cfg; // wall clock
    double wall = single_gap_saving(2000.0, cfg, 670.0);
    CHECK(wall == doctest::Approx(670.0 * (1.0 - 2.4 / 3.1)).epsilon(1e-9));
    CHECK(wall == doctest::Approx(151.29032258064515).epsilon(1e-9));

    cfg.timeout_mode = TimeoutMode::TraceTime;
    double trace = single_gap_saving(2000.0, cfg, 670.0);
    CHECK(trace == doctest::Approx(670.0 * (3.1 / 2.4 - 1.0)).epsilon(1e-9));
    CHECK(trace == doctest::Approx(195.41666666666666).epsilon(1e-9));

    // A zero timeout is the eager upclock itself.
    CHECK(single_gap_saving(2000.0, cfg, 0.0) == doctest::Approx(0.0).epsilon(1e-12));

    // Timeouts that outlast the gap never fire, in either accounting mode.
    cfg.timeout_mode = TimeoutMode::WallClock;
    CHECK_THROWS_AS(single_gap_saving(500.0, cfg, 670.0), DomainError);
    cfg.timeout_mode = TimeoutMode::TraceTime;
    CHECK_THROWS_AS(single_gap_saving(500.0, cfg, 670.0), DomainError);
    CHECK_NOTHROW(single_gap_saving(671.0, cfg, 670.0));

    CHECK_THROWS_AS(single_gap_saving(-5.0, cfg, 670.0), Error);
}

TEST_CASE("policy comparison reports speedups against the chosen baseline") {
    WebTraceConfig wcfg;
    wcfg.n_requests = 100;
    wcfg.seed = 7;
    WorkloadTrace tr = gen_web_trace(wcfg);
    SimConfig cfg;

    auto fixed = make_policy("fixed:670", cfg.freq, cfg.costs);
    auto hint = make_policy("hint:670", cfg.freq, cfg.costs);
    auto oracle = make_policy("oracle", cfg.freq, cfg.costs);
    std::vector<const Policy*> ps{fixed.get(), hint.get(), oracle.get()};

    ComparisonReport cmp = compare_policies(tr, ps, cfg, "fixed:670");
    REQUIRE(cmp.reports.size() == 3);
    REQUIRE(cmp.speedups.size() == 3);
    CHECK(cmp.baseline == "fixed:670");
    CHECK(cmp.reports[0].policy == "fixed:670");
    CHECK(cmp.speedups[0] == 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(cmp.speedups[i] ==
              doctest::Approx(cmp.reports[0].total_wall_us / cmp.reports[i].total_wall_us - 1.0)
                  .epsilon(1e-12));
    // Hints recover real time on this workload.
    CHECK(cmp.speedups[1] > 0.0);
    CHECK(cmp.speedups[2] >= cmp.speedups[1] - 1e-12);

    nlohmann::json j = cmp.to_json();
    CHECK(j["baseline"] == "fixed:670");
    CHECK(j["results"].size() == 3);
    CHECK(j["results"][1]["speedup"].get<double>() == doctest::Approx(cmp.speedups[1]));

    std::string csv = cmp.to_csv();
    CHECK(csv.rfind("policy,wall_us,speedup,transitions,overhead_us\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    CHECK_THROWS_AS(compare_policies(tr, ps, cfg, "nope"), ConfigError);
    CHECK_THROWS_AS(compare_policies(tr, {}, cfg, "fixed:670"), ConfigError);
}
