#include "avxfreq/policy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "avxfreq/simengine.hpp"

namespace avxfreq {

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

SegmentClass class_for(LicenseLevel l) {
    switch (l) {
    case LicenseLevel::L0: return SegmentClass::Scalar;
    case LicenseLevel::L1: return SegmentClass::Avx2Heavy;
    case LicenseLevel::L2: return SegmentClass::Avx512Heavy;
    }
    return SegmentClass::Scalar;
}

class FixedTimeoutPolicy final : public Policy {
public:
    explicit FixedTimeoutPolicy(double timeout_us) : timeout_us_(timeout_us) {
        if (!(timeout_us >= 0.0))
            throw ConfigError("fixed timeout must be non-negative");
    }

    std::string name() const override { return "fixed:" + fmt_num(timeout_us_); }

    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext&) const override {
        switch (ev.kind) {
        case PolicyEvent::Kind::RegionEnd: return PolicyAction::arm_timer(timeout_us_);
        case PolicyEvent::Kind::TimerFired: return PolicyAction::upclock_now();
        default: return PolicyAction::hold();
        }
    }

private:
    double timeout_us_;
};

class BreakEvenTimeoutPolicy final : public Policy {
public:
    explicit BreakEvenTimeoutPolicy(BreakEvenTable table) : table_(std::move(table)) {}

    std::string name() const override { return "breakeven"; }

    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext& ctx) const override {
        switch (ev.kind) {
        case PolicyEvent::Kind::RegionEnd:
            return PolicyAction::arm_timer(
                table_.lookup(ev.from, ev.to, ctx.active_cores).t_be_us);
        case PolicyEvent::Kind::TimerFired:
            return PolicyAction::upclock_now();
        default:
            return PolicyAction::hold();
        }
    }

private:
    BreakEvenTable table_;
};

class HintDirectedPolicy final : public Policy {
public:
    explicit HintDirectedPolicy(double fallback_us) : fallback_us_(fallback_us) {
        if (!(fallback_us >= 0.0))
            throw ConfigError("hint fallback timeout must be non-negative");
    }

    std::string name() const override { return "hint:" + fmt_num(fallback_us_); }

    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext& ctx) const override {
        switch (ev.kind) {
        case PolicyEvent::Kind::RegionEnd: return PolicyAction::arm_timer(fallback_us_);
        case PolicyEvent::Kind::TimerFired: return PolicyAction::upclock_now();
        case PolicyEvent::Kind::Hint:
            return ctx.current > ctx.required ? PolicyAction::upclock_now()
                                              : PolicyAction::hold();
        default: return PolicyAction::hold();
        }
    }

private:
    double fallback_us_;
};

class OraclePolicy final : public Policy {
public:
    explicit OraclePolicy(BreakEvenTable table) : table_(std::move(table)) {}

    std::string name() const override { return "oracle"; }
    bool clairvoyant() const override { return true; }

    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext& ctx) const override {
        if (ev.kind != PolicyEvent::Kind::RegionEnd)
            return PolicyAction::hold();
        if (!ev.clairvoyant_gap_ref_us)
            throw ContractError("oracle policy got a region end without clairvoyance data");
        double threshold = table_.lookup(ev.from, ev.to, ctx.active_cores).gap_threshold_us;
        return *ev.clairvoyant_gap_ref_us >= threshold ? PolicyAction::upclock_now()
                                                       : PolicyAction::hold();
    }

private:
    BreakEvenTable table_;
};

class NeverUpclockPolicy final : public Policy {
public:
    std::string name() const override { return "never"; }
    PolicyAction on_event(const PolicyEvent&, const PolicyContext&) const override {
        return PolicyAction::hold();
    }
};

class ImmediateUpclockPolicy final : public Policy {
public:
    std::string name() const override { return "immediate"; }
    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext&) const override {
        return ev.kind == PolicyEvent::Kind::RegionEnd ? PolicyAction::upclock_now()
                                                       : PolicyAction::hold();
    }
};

// Echoes the spec string it was built from, so reports name policies the way
// the user wrote them.
class NamedPolicy final : public Policy {
public:
    NamedPolicy(std::string name, std::unique_ptr<Policy> inner)
        : name_(std::move(name)), inner_(std::move(inner)) {}

    std::string name() const override { return name_; }
    bool clairvoyant() const override { return inner_->clairvoyant(); }
    PolicyAction on_event(const PolicyEvent& ev, const PolicyContext& ctx) const override {
        return inner_->on_event(ev, ctx);
    }

private:
    std::string name_;
    std::unique_ptr<Policy> inner_;
};

double parse_us(std::string_view s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(std::string(s), &pos);
        if (pos != s.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("bad ") + what + " \"" + std::string(s) + "\"");
    }
}

} // namespace

std::unique_ptr<Policy> fixed_timeout_policy(double timeout_us) {
    return std::make_unique<FixedTimeoutPolicy>(timeout_us);
}

std::unique_ptr<Policy> break_even_timeout_policy(BreakEvenTable table) {
    return std::make_unique<BreakEvenTimeoutPolicy>(std::move(table));
}

std::unique_ptr<Policy> hint_directed_policy(double fallback_timeout_us) {
    return std::make_unique<HintDirectedPolicy>(fallback_timeout_us);
}

std::unique_ptr<Policy> oracle_policy(BreakEvenTable table) {
    return std::make_unique<OraclePolicy>(std::move(table));
}

std::unique_ptr<Policy> never_upclock_policy() {
    return std::make_unique<NeverUpclockPolicy>();
}

std::unique_ptr<Policy> immediate_upclock_policy() {
    return std::make_unique<ImmediateUpclockPolicy>();
}

std::unique_ptr<Policy> make_policy(std::string_view spec, const FrequencyTable& freq,
                                    const TransitionCostTable& costs) {
    auto with_name = [&](std::unique_ptr<Policy> p) -> std::unique_ptr<Policy> {
        if (p->name() == spec)
            return p;
        return std::make_unique<NamedPolicy>(std::string(spec), std::move(p));
    };
    auto full_table = [&] { return BreakEvenTable(freq, costs, 1, freq.max_cores()); };

    if (spec == "never") return with_name(never_upclock_policy());
    if (spec == "immediate") return with_name(immediate_upclock_policy());
    if (spec == "breakeven" || spec == "fixed:breakeven")
        return with_name(break_even_timeout_policy(full_table()));
    if (spec == "oracle") return with_name(oracle_policy(full_table()));
    if (spec == "intel-documented") return with_name(fixed_timeout_policy(2000.0));
    if (spec == "fixed") return with_name(fixed_timeout_policy(670.0));
    if (spec == "hint") return with_name(hint_directed_policy(670.0));
    if (spec.rfind("fixed:", 0) == 0)
        return with_name(fixed_timeout_policy(parse_us(spec.substr(6), "timeout")));
    if (spec.rfind("hint:", 0) == 0)
        return with_name(hint_directed_policy(parse_us(spec.substr(5), "fallback timeout")));
    throw ConfigError("unknown policy spec \"" + std::string(spec) +
                      "\" (fixed:<us>, breakeven, hint:<us>, oracle, never, immediate)");
}

GapSweepResult competitive_sweep(const Policy& policy, LicenseLevel from, LicenseLevel to,
                                 const SimConfig& cfg, const std::vector<double>& gaps_us) {
    cfg.validate();
    if (level_index(from) <= level_index(to))
        throw ConfigError("competitive sweep needs a downward pair (from above to)");
    if (gaps_us.empty())
        throw ConfigError("competitive sweep needs at least one gap");

    int cores = cfg.active_cores;
    double f_ref = cfg.ref_freq_ghz();
    double f_low = cfg.freq.freq_ghz(cores, from);
    double f_high = cfg.freq.freq_ghz(cores, to);
    double t_up = cfg.costs.cost_us(from, to, cores);
    double t_down = cfg.costs.cost_us(to, from, cores);
    double t_total = t_up + t_down;
    if (!(t_total > 0.0))
        throw ConfigError("zero transition overhead makes the competitive ratio undefined");
    if (!(f_high > f_low))
        throw ConfigError("no frequency headroom between the sweep pair");

    const double lead_us = 50.0;
    double enter_cost = cfg.costs.cost_us(LicenseLevel::L0, from, cores);

    GapSweepResult res;
    res.from = from;
    res.to = to;
    res.policy = policy.name();
    res.gaps_us.reserve(gaps_us.size());
    res.ratio.reserve(gaps_us.size());
    for (double g : gaps_us) {
        if (!(g > 0.0))
            throw ConfigError("competitive sweep gaps must be positive");
        WorkloadTrace trace({{class_for(from), lead_us, false},
                             {class_for(to), g, false},
                             {class_for(from), lead_us, false}});
        SimReport rep = simulate(trace, policy, cfg);

        // Wall time of a run that pays nothing extra for the gap: both
        // bursts at f_low, the whole gap at f_high, only the unavoidable
        // initial downclock charged.
        double floor = enter_cost + 2.0 * dilate(lead_us, f_ref, f_low) + dilate(g, f_ref, f_high);
        double excess = rep.total_wall_us - floor;

        // Best any offline strategy pays: stay low (slowdown over the gap)
        // or switch (the full transition pair), whichever is cheaper.
        double stay = dilate(g, f_ref, f_low) - dilate(g, f_ref, f_high);
        double best = std::min(stay, t_total);

        res.gaps_us.push_back(g);
        res.ratio.push_back(excess / best);
    }
    res.max_ratio = *std::max_element(res.ratio.begin(), res.ratio.end());
    return res;
}

nlohmann::json GapSweepResult::to_json() const {
    return {{"policy", policy},
            {"from", level_index(from)},
            {"to", level_index(to)},
            {"gaps_us", gaps_us},
            {"ratio", ratio},
            {"max_ratio", max_ratio}};
}

} // namespace avxfreq
