#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avxfreq/model.hpp"
#include "avxfreq/trace.hpp"

namespace avxfreq {

struct SimConfig; // simengine.hpp

/// What the engine tells a policy. RegionEnd fires when the required level
/// drops below the level currently held; clairvoyant_gap_ref_us is filled in
/// only for policies that declare clairvoyance and gives the reference-time
/// length of the low-requirement run that is just beginning.
struct PolicyEvent {
    enum class Kind { SegmentStart, RegionEnd, TimerFired, Hint };

    Kind kind = Kind::SegmentStart;
    SegmentClass seg_class = SegmentClass::Scalar;       // SegmentStart
    LicenseLevel from = LicenseLevel::L0;                // RegionEnd
    LicenseLevel to = LicenseLevel::L0;                  // RegionEnd
    std::optional<double> clairvoyant_gap_ref_us;        // RegionEnd, clairvoyant only
};

struct PolicyAction {
    enum class Kind { Hold, ArmTimer, UpclockNow };

    Kind kind = Kind::Hold;
    double delay_us = 0.0; // ArmTimer only

    static PolicyAction hold() { return {}; }
    static PolicyAction arm_timer(double delay_us) { return {Kind::ArmTimer, delay_us}; }
    static PolicyAction upclock_now() { return {Kind::UpclockNow, 0.0}; }
};

struct PolicyContext {
    LicenseLevel current = LicenseLevel::L0;  // level held right now
    LicenseLevel required = LicenseLevel::L0; // level the current segment needs
    int active_cores = 1;
};

/// Decides when to leave a reduced frequency level. Policies are stateless:
/// any memory they need lives in the engine (the single pending timer), so
/// the same instance can serve concurrent simulations.
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string name() const = 0;
    virtual bool clairvoyant() const { return false; }
    virtual PolicyAction on_event(const PolicyEvent& ev, const PolicyContext& ctx) const = 0;
};

/// Arm a fixed timeout at every region end, upclock when it fires.
std::unique_ptr<Policy> fixed_timeout_policy(double timeout_us);

/// Like fixed, but the timeout is the break-even time of the pair being left.
std::unique_ptr<Policy> break_even_timeout_policy(BreakEvenTable table);

/// Fixed fallback timeout, plus an immediate upclock when the application
/// hints that its wide work is done.
std::unique_ptr<Policy> hint_directed_policy(double fallback_timeout_us);

/// Clairvoyant baseline: sees the length of the gap ahead and upclocks right
/// away iff the gap is at least the pair's gap threshold (ties upclock).
std::unique_ptr<Policy> oracle_policy(BreakEvenTable table);

/// Never leaves a reduced level; the license only ever ratchets down.
std::unique_ptr<Policy> never_upclock_policy();

/// Upclocks at every region end, paying the stall every time.
std::unique_ptr<Policy> immediate_upclock_policy();

/// Build a policy from a spec string:
///   "fixed:<us>", "breakeven", "hint:<fallback us>", "oracle",
///   "never", "immediate"
/// plus the aliases "fixed" (670), "hint" (670), "fixed:breakeven"
/// (= breakeven) and "intel-documented" (= fixed:2000).
/// freq/costs feed the break-even table that "breakeven" and "oracle" need.
std::unique_ptr<Policy> make_policy(std::string_view spec, const FrequencyTable& freq,
                                    const TransitionCostTable& costs);

/// Competitive analysis of one policy on a single gap: the trace
/// [from 50us][to gap][from 50us], cost counted as wall time in excess of a
/// run that gets the whole gap at the recovered frequency for free.
struct GapSweepResult {
    LicenseLevel from = LicenseLevel::L2;
    LicenseLevel to = LicenseLevel::L0;
    std::string policy;
    std::vector<double> gaps_us;
    std::vector<double> ratio; // policy excess / offline-optimal excess
    double max_ratio = 0.0;

    nlohmann::json to_json() const;
};

GapSweepResult competitive_sweep(const Policy& policy, LicenseLevel from, LicenseLevel to,
                                 const SimConfig& cfg, const std::vector<double>& gaps_us);

} // namespace avxfreq
