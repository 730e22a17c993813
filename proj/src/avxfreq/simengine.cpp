#include "avxfreq/simengine.hpp"

#include <cmath>

namespace avxfreq {

const char* to_string(TimeoutMode m) {
    return m == TimeoutMode::WallClock ? "wall" : "trace";
}

void SimConfig::validate() const {
    if (active_cores < 1 || active_cores > freq.max_cores())
        throw ConfigError("active_cores " + std::to_string(active_cores) +
                          " outside the frequency table range 1.." +
                          std::to_string(freq.max_cores()));
    if (perf.kind != PerformanceModel::Kind::Proportional)
        throw ConfigError("unsupported performance model");
}

nlohmann::json SimConfig::to_json() const {
    return {{"freq", freq.to_json()},
            {"costs", costs.to_json()},
            {"active_cores", active_cores},
            {"timeout_mode", to_string(timeout_mode)},
            {"f_ref_ghz", ref_freq_ghz()}};
}

int SimReport::transition_count() const {
    int n = 0;
    for (const auto& row : transitions)
        for (int v : row)
            n += v;
    return n;
}

nlohmann::json SimReport::to_json() const {
    nlohmann::json trans = nlohmann::json::object();
    for (int f = 0; f < 3; ++f)
        for (int t = 0; t < 3; ++t)
            if (transitions[f][t])
                trans[std::to_string(f) + "->" + std::to_string(t)] = transitions[f][t];
    nlohmann::json j{
        {"policy", policy},
        {"total_wall_us", total_wall_us},
        {"trace_total_ref_us", trace_total_ref_us},
        {"residency_us",
         {{"l0", residency_us[0]}, {"l1", residency_us[1]}, {"l2", residency_us[2]}}},
        {"transitions", trans},
        {"transition_count", transition_count()},
        {"transition_overhead_us", transition_overhead_us},
        {"hints_taken", hints_taken},
    };
    if (!timeline.empty()) {
        nlohmann::json tl = nlohmann::json::array();
        for (const auto& e : timeline) {
            nlohmann::json ej{{"wall_us", e.wall_us}, {"trace_us", e.trace_us}, {"kind", e.kind}};
            if (e.kind == "downclock" || e.kind == "upclock") {
                ej["from"] = level_index(e.from);
                ej["to"] = level_index(e.to);
            }
            tl.push_back(ej);
        }
        j["timeline"] = tl;
    }
    return j;
}

namespace {

// Replay state. The license level only rises (downclocks) by force of the
// instruction stream and only falls back (upclocks) on policy action; the
// single pending timer lives here, not in the policy.
struct Engine {
    const WorkloadTrace& trace;
    const Policy& policy;
    const SimConfig& cfg;

    double f_ref;
    LicenseLevel level = LicenseLevel::L0;
    double wall_us = 0.0;
    double trace_ref_us = 0.0;
    std::optional<double> deadline; // absolute, in the configured clock
    SimReport report;

    Engine(const WorkloadTrace& t, const Policy& p, const SimConfig& c)
        : trace(t), policy(p), cfg(c), f_ref(c.ref_freq_ghz()) {
        report.policy = p.name();
        report.trace_total_ref_us = t.total_ref_us();
    }

    double clock() const {
        return cfg.timeout_mode == TimeoutMode::WallClock ? wall_us : trace_ref_us;
    }

    double level_freq() const { return cfg.freq.freq_ghz(cfg.active_cores, level); }

    void note(const char* kind, LicenseLevel from, LicenseLevel to) {
        if (cfg.record_timeline)
            report.timeline.push_back({wall_us, trace_ref_us, kind, from, to});
    }

    // Stall for the transition cost, count it, clear any pending timer.
    // The timeline records the instant the transition begins.
    void switch_level(LicenseLevel to, const char* kind) {
        note(kind, level, to);
        double cost = cfg.costs.cost_us(level, to, cfg.active_cores);
        wall_us += cost;
        report.transition_overhead_us += cost;
        ++report.transitions[level_index(level)][level_index(to)];
        level = to;
        deadline.reset();
    }

    void apply(const PolicyAction& act, LicenseLevel required) {
        switch (act.kind) {
        case PolicyAction::Kind::Hold:
            break;
        case PolicyAction::Kind::ArmTimer:
            if (!(act.delay_us >= 0.0))
                throw ContractError("policy \"" + policy.name() + "\" armed a negative timer");
            deadline = clock() + act.delay_us;
            note("timer_armed", level, level);
            break;
        case PolicyAction::Kind::UpclockNow:
            if (level_index(level) <= level_index(required))
                throw ContractError("policy \"" + policy.name() +
                                    "\" requested an upclock at or below the required level");
            switch_level(required, "upclock");
            break;
        }
    }

    PolicyAction dispatch(const PolicyEvent& ev, LicenseLevel required) {
        return policy.on_event(ev, {level, required, cfg.active_cores});
    }

    // Reference-time length of the low run starting at segment index i:
    // consecutive segments needing less than the level currently held.
    double gap_ahead(std::size_t i) const {
        double gap = 0.0;
        const auto& segs = trace.segments();
        for (; i < segs.size(); ++i) {
            if (level_index(required_level(segs[i].cls)) >= level_index(level))
                break;
            gap += segs[i].dur_ref_us;
        }
        return gap;
    }

    // Execute dur_ref_us of work at the held level.
    void run(double dur_ref_us) {
        double w = dilate(dur_ref_us, f_ref, level_freq());
        wall_us += w;
        report.residency_us[level_index(level)] += w;
        trace_ref_us += dur_ref_us;
    }

    void fire_timer(LicenseLevel required) {
        deadline.reset();
        PolicyEvent ev;
        ev.kind = PolicyEvent::Kind::TimerFired;
        note("timer_fired", level, level);
        apply(dispatch(ev, required), required);
    }

    void segment_body(const TraceSegment& seg) {
        LicenseLevel required = required_level(seg.cls);
        double rem = seg.dur_ref_us;
        int fires = 0;
        while (rem > 0.0) {
            if (deadline) {
                double avail = *deadline - clock();
                if (avail <= 0.0) {
                    if (++fires > 1000000)
                        throw ContractError("policy \"" + policy.name() +
                                            "\" rearms its timer without making progress");
                    fire_timer(required);
                    continue;
                }
                // Portion of this segment that fits before the deadline,
                // in reference time.
                double to_deadline = cfg.timeout_mode == TimeoutMode::WallClock
                                         ? avail * level_freq() / f_ref
                                         : avail;
                if (to_deadline < rem) {
                    run(to_deadline);
                    rem -= to_deadline;
                    fire_timer(required);
                    continue;
                }
            }
            run(rem);
            rem = 0.0;
        }
    }

    SimReport operator()() {
        const auto& segs = trace.segments();
        for (std::size_t i = 0; i < segs.size(); ++i) {
            const TraceSegment& seg = segs[i];
            LicenseLevel required = required_level(seg.cls);

            if (level_index(required) > level_index(level)) {
                // The instruction mix demands a license the core does not
                // hold: immediate forced downclock.
                switch_level(required, "downclock");
            } else {
                bool dropped = i > 0 && level_index(required_level(segs[i - 1].cls)) >
                                            level_index(required);
                if (dropped) {
                    PolicyEvent ev;
                    ev.kind = PolicyEvent::Kind::RegionEnd;
                    ev.from = level;
                    ev.to = required;
                    if (policy.clairvoyant())
                        ev.clairvoyant_gap_ref_us = gap_ahead(i);
                    apply(dispatch(ev, required), required);
                }
                if (required == level)
                    deadline.reset(); // the held level is needed again
            }

            {
                PolicyEvent ev;
                ev.kind = PolicyEvent::Kind::SegmentStart;
                ev.seg_class = seg.cls;
                apply(dispatch(ev, required), required);
            }

            if (seg.hint) {
                PolicyEvent ev;
                ev.kind = PolicyEvent::Kind::Hint;
                PolicyAction act = dispatch(ev, required);
                if (act.kind == PolicyAction::Kind::UpclockNow) {
                    note("hint", level, required);
                    ++report.hints_taken;
                }
                apply(act, required);
            }

            segment_body(seg);
        }
        report.total_wall_us = wall_us;
        return std::move(report);
    }
};

} // namespace

SimReport simulate(const WorkloadTrace& trace, const Policy& policy, const SimConfig& cfg) {
    cfg.validate();
    return Engine(trace, policy, cfg)();
}

double single_gap_saving(double gap_ref_us, const SimConfig& cfg, double timeout_us) {
    if (!(gap_ref_us > 0.0))
        throw DomainError("single_gap_saving: gap must be positive");
    WorkloadTrace trace({{SegmentClass::Avx512Heavy, 100.0, false},
                         {SegmentClass::Scalar, gap_ref_us, false}});
    SimReport waited = simulate(trace, *fixed_timeout_policy(timeout_us), cfg);
    if (waited.transitions[level_index(LicenseLevel::L2)][level_index(LicenseLevel::L0)] == 0)
        throw DomainError("single_gap_saving: the timeout never fires within the gap");
    SimReport eager = simulate(trace, *immediate_upclock_policy(), cfg);
    return waited.total_wall_us - eager.total_wall_us;
}

nlohmann::json ComparisonReport::to_json() const {
    nlohmann::json results = nlohmann::json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        nlohmann::json r = reports[i].to_json();
        r["speedup"] = speedups[i];
        results.push_back(r);
    }
    return {{"baseline", baseline}, {"results", results}};
}

std::string ComparisonReport::to_csv() const {
    std::string out = "policy,wall_us,speedup,transitions,overhead_us\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const SimReport& r = reports[i];
        out += r.policy + "," + nlohmann::json(r.total_wall_us).dump() + "," +
               nlohmann::json(speedups[i]).dump() + "," + std::to_string(r.transition_count()) +
               "," + nlohmann::json(r.transition_overhead_us).dump() + "\n";
    }
    return out;
}

ComparisonReport compare_policies(const WorkloadTrace& trace,
                                  const std::vector<const Policy*>& policies,
                                  const SimConfig& cfg, const std::string& baseline) {
    if (policies.empty())
        throw ConfigError("compare_policies: no policies given");
    ComparisonReport rep;
    rep.baseline = baseline;
    std::size_t base_idx = policies.size();
    for (std::size_t i = 0; i < policies.size(); ++i) {
        rep.reports.push_back(simulate(trace, *policies[i], cfg));
        if (rep.reports.back().policy == baseline)
            base_idx = i;
    }
    if (base_idx == policies.size())
        throw ConfigError("compare_policies: baseline \"" + baseline +
                          "\" is not among the policies");
    double base_wall = rep.reports[base_idx].total_wall_us;
    for (const SimReport& r : rep.reports)
        rep.speedups.push_back(base_wall / r.total_wall_us - 1.0);
    return rep;
}

} // namespace avxfreq
