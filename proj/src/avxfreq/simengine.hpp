#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "avxfreq/model.hpp"
#include "avxfreq/policy.hpp"
#include "avxfreq/trace.hpp"

namespace avxfreq {

/// Whether a policy timer measures elapsed wall time (what real hardware
/// would do) or elapsed reference time (progress through the trace). The two
/// give different answers whenever the timer runs at a reduced frequency.
enum class TimeoutMode { WallClock, TraceTime };

const char* to_string(TimeoutMode m);

struct SimConfig {
    FrequencyTable freq = FrequencyTable::preset("i9-7940X");
    TransitionCostTable costs = TransitionCostTable::preset("flat16");
    int active_cores = 1;
    PerformanceModel perf{};
    TimeoutMode timeout_mode = TimeoutMode::WallClock;
    bool record_timeline = false;

    double ref_freq_ghz() const { return freq.freq_ghz(active_cores, perf.reference_level); }
    void validate() const;
    nlohmann::json to_json() const;
};

struct TimelineEvent {
    double wall_us = 0.0;
    double trace_us = 0.0;
    std::string kind; // "downclock", "upclock", "timer_armed", "hint"
    LicenseLevel from = LicenseLevel::L0;
    LicenseLevel to = LicenseLevel::L0;
};

struct SimReport {
    std::string policy;
    double total_wall_us = 0.0;
    double trace_total_ref_us = 0.0;
    std::array<double, 3> residency_us{}; // wall time spent at each level
    int transitions[3][3] = {};           // [from][to] counts
    double transition_overhead_us = 0.0;
    int hints_taken = 0;
    std::vector<TimelineEvent> timeline;

    int transition_count() const;
    nlohmann::json to_json() const;
};

/// Replay a trace under a policy. Wall time advances as reference durations
/// dilated by the frequency of the level held; license drops are forced and
/// immediate, license recovery happens only on policy action; every
/// transition stalls the core for its cost. At most one timer is pending,
/// rearming replaces it, any transition clears it, and a segment that needs
/// the held level cancels it.
SimReport simulate(const WorkloadTrace& trace, const Policy& policy, const SimConfig& cfg);

/// Wall time saved on [avx512 100us][scalar gap] by upclocking after
/// timeout_us instead of immediately. Errors if the timeout never fires
/// inside the gap.
double single_gap_saving(double gap_ref_us, const SimConfig& cfg, double timeout_us);

struct ComparisonReport {
    std::string baseline;
    std::vector<SimReport> reports;
    std::vector<double> speedups; // wall(baseline) / wall(policy) - 1

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

/// Run several policies over the same trace. Order of results follows the
/// order of policies; the baseline must be one of them.
ComparisonReport compare_policies(const WorkloadTrace& trace,
                                  const std::vector<const Policy*>& policies,
                                  const SimConfig& cfg, const std::string& baseline);

} // namespace avxfreq
