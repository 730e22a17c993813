#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "avxfreq/simengine.hpp"
#include "avxfreq/trace.hpp"

namespace avxfreq {

/// One scheduler invocation: at t_us the core switched to pid, with the
/// frequency license observed at that moment. A burst is the interval from a
/// pid's switch-in to the next invocation.
struct SchedEvent {
    double t_us = 0.0;
    std::int64_t pid = 0;
    LicenseLevel license = LicenseLevel::L0;
};

std::vector<SchedEvent> parse_sched_trace(const std::string& text);
std::string emit_sched_trace(const std::vector<SchedEvent>& events,
                             const std::map<std::string, std::string>& meta = {});

struct ClassifierConfig {
    double ema_weight = 0.2;     // weight of the newest license sample
    double long_burst_us = 1000; // bursts longer than this always update
};

/// Decide whether one finished burst counts as a trustworthy observation.
/// It does when the burst was long (the license had time to settle on this
/// process's own work), or when the license changed while the process ran
/// and the new level disagrees with the score, which means the change is
/// news. Short bursts under an inherited license mostly reflect the
/// previous process on the core and are discarded.
bool score_update_applies(double score, LicenseLevel license_now, LicenseLevel license_prev,
                          double dt_us, const ClassifierConfig& cfg = {});

/// Fold one finished burst into a process's power score: an exponential
/// moving average over the license levels of bursts that pass the filter
/// above. Bursts that do not pass leave the score unchanged.
double update_score(double score, LicenseLevel license_now, LicenseLevel license_prev,
                    double dt_us, const ClassifierConfig& cfg = {});

struct PidScore {
    double final_score = 0.0;
    int n_updates = 0; // bursts that passed the trust filter
    std::vector<std::pair<double, double>> timeline; // (t_us, score after burst)
};

struct ClassifyReport {
    std::map<std::int64_t, PidScore> per_pid;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

/// Run the scoring rule over a whole scheduler trace. Events must be
/// time-ordered; the trailing burst has no closing invocation and is
/// ignored. Scores start at 0 and stay within [0, 2].
ClassifyReport classify(const std::vector<SchedEvent>& events,
                        const ClassifierConfig& cfg = {});

/// A synthetic process: its pid and the instruction-mix pattern it loops
/// over forever.
struct ProcSpec {
    std::int64_t pid = 0;
    std::vector<TraceSegment> pattern; // hints ignored

    LicenseLevel ground_truth() const;
};

struct SchedTrace {
    std::vector<SchedEvent> events;
    std::map<std::int64_t, LicenseLevel> ground_truth;
    std::map<std::string, std::string> meta;
};

/// Round-robin the processes on one core and record what a scheduler-tick
/// classifier would see. Slice lengths jitter uniformly in [0.5, 2.5) times
/// slice_us. The license follows the hardware rules: it rises the moment a
/// process needs a higher level and falls back to the demanded level only
/// after upclock_timeout_us of continuous lower demand, so a process
/// switched in right after a wide burst starts under the previous process's
/// license. cfg supplies the frequency table used to dilate pattern
/// progress while the license is reduced.
SchedTrace synth_sched_trace(const std::vector<ProcSpec>& procs, double slice_us,
                             double horizon_us, const SimConfig& cfg,
                             double upclock_timeout_us, std::uint64_t seed);

} // namespace avxfreq
