#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avxfreq/errors.hpp"
#include "json.hpp"

namespace avxfreq {

/// Frequency license levels. L0 runs the nominal turbo frequency, L1 is the
/// reduced level entered by heavy 256-bit work, L2 the further reduced level
/// entered by heavy 512-bit work. Ordered: higher level, lower frequency.
enum class LicenseLevel : int { L0 = 0, L1 = 1, L2 = 2 };

constexpr int level_index(LicenseLevel l) { return static_cast<int>(l); }

LicenseLevel level_from_int(int v);
const char* to_string(LicenseLevel l);

/// Turbo frequencies for one active-core bucket, e.g. "1-2 cores".
/// A bucket covers every core count up to and including max_active_cores
/// that the previous bucket does not cover.
struct FreqBucket {
    int max_active_cores = 0;
    std::array<double, 3> freq_ghz{}; // indexed by level_index()
};

/// Per-license turbo frequency table of one CPU model.
///
/// Invariants, checked at construction:
///   - buckets sorted by strictly increasing max_active_cores
///   - all frequencies positive
///   - within a bucket, freq(L0) >= freq(L1) >= freq(L2)
///   - for a fixed level, frequency never increases with the core count
class FrequencyTable {
public:
    explicit FrequencyTable(std::vector<FreqBucket> buckets);

    /// Known presets: "gold6130" (Xeon Gold 6130), "i9-7940X".
    static FrequencyTable preset(std::string_view name);
    static const std::vector<std::string>& preset_names();

    static FrequencyTable from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    double freq_ghz(int active_cores, LicenseLevel level) const;
    int max_cores() const { return buckets_.back().max_active_cores; }
    const std::vector<FreqBucket>& buckets() const { return buckets_; }

private:
    std::vector<FreqBucket> buckets_;
};

/// One measured license-transition stall.
struct CostEntry {
    LicenseLevel from = LicenseLevel::L0;
    LicenseLevel to = LicenseLevel::L0;
    int active_cores = 1;
    double stall_us = 0.0;
};

/// Stall cost of license transitions, either a flat per-change value or a
/// table of measured (from, to, cores) entries. cost_us(x, x, c) is always 0.
class TransitionCostTable {
public:
    static TransitionCostTable flat(double stall_us);
    static TransitionCostTable from_entries(std::vector<CostEntry> entries);

    /// Known presets: "gold6130-measured" (per-direction, per-core-count
    /// stalls measured on a Xeon Gold 6130) and "flat16" (16 us per change).
    /// "flat:<us>" builds an ad-hoc flat table.
    static TransitionCostTable preset(std::string_view name);
    static const std::vector<std::string>& preset_names();

    static TransitionCostTable from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    double cost_us(LicenseLevel from, LicenseLevel to, int active_cores) const;
    std::optional<double> flat_override() const { return flat_; }

private:
    TransitionCostTable() = default;

    std::optional<double> flat_;
    std::vector<CostEntry> entries_;
};

/// How work maps to time. Proportional: a segment's duration scales with
/// f_ref / f_actual. The enum exists so a different model can slot in later.
struct PerformanceModel {
    enum class Kind { Proportional };
    Kind kind = Kind::Proportional;
    LicenseLevel reference_level = LicenseLevel::L0;
};

/// Wall time dur_ref_us takes when executed at f_actual instead of f_ref.
double dilate(double dur_ref_us, double f_ref_ghz, double f_actual_ghz);

/// Time at the recovered frequency needed to amortize one down + up
/// transition pair: t_be = f_high * t_overhead / (f_high - f_low).
/// Running faster for at least this long pays for the stalls; any shorter
/// stay loses time overall.
double break_even_time(double f_high_ghz, double f_low_ghz, double total_overhead_us);

struct BreakEvenEntry {
    LicenseLevel from = LicenseLevel::L2; // held (lower-frequency) level
    LicenseLevel to = LicenseLevel::L0;   // recovery target
    int active_cores = 1;
    double t_total_overhead_us = 0.0; // down-stall + up-stall
    double t_be_us = 0.0;
    double gap_threshold_us = 0.0; // t_be - t_overhead; shortest gap worth leaving
};

/// The three downward license transitions, in report order.
constexpr std::array<std::pair<LicenseLevel, LicenseLevel>, 3> downward_pairs() {
    return {{{LicenseLevel::L1, LicenseLevel::L0},
             {LicenseLevel::L2, LicenseLevel::L0},
             {LicenseLevel::L2, LicenseLevel::L1}}};
}

/// Break-even entries for every downward pair at every core count in
/// [cores_lo, cores_hi]. Pair-major, core counts ascending within a pair.
std::vector<BreakEvenEntry> break_even_table(const FrequencyTable& freq,
                                             const TransitionCostTable& costs,
                                             int cores_lo, int cores_hi);

/// Lookup wrapper over break_even_table results.
class BreakEvenTable {
public:
    BreakEvenTable(const FrequencyTable& freq, const TransitionCostTable& costs,
                   int cores_lo, int cores_hi);

    const BreakEvenEntry& lookup(LicenseLevel from, LicenseLevel to, int active_cores) const;
    const std::vector<BreakEvenEntry>& entries() const { return entries_; }

private:
    std::vector<BreakEvenEntry> entries_;
};

nlohmann::json to_json(const BreakEvenEntry& e);

} // namespace avxfreq
