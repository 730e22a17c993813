#include "avxfreq/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace avxfreq {

LicenseLevel level_from_int(int v) {
    if (v < 0 || v > 2)
        throw ConfigError("license level must be 0, 1 or 2, got " + std::to_string(v));
    return static_cast<LicenseLevel>(v);
}

const char* to_string(LicenseLevel l) {
    switch (l) {
    case LicenseLevel::L0: return "L0";
    case LicenseLevel::L1: return "L1";
    case LicenseLevel::L2: return "L2";
    }
    return "?";
}

namespace {

std::string pair_name(LicenseLevel from, LicenseLevel to) {
    return std::string(to_string(from)) + "->" + to_string(to);
}

// Xeon Gold 6130 license/turbo frequency table (GHz).
const std::vector<FreqBucket> k_gold6130{
    {2, {3.7, 3.6, 3.5}},
    {4, {3.5, 3.4, 3.1}},
    {8, {3.4, 3.1, 2.4}},
    {12, {3.1, 2.6, 2.1}},
    {16, {2.8, 2.4, 1.9}},
};

// Core i9-7940X: one bucket, license frequencies do not depend on the
// active-core count in the range we model.
const std::vector<FreqBucket> k_i9_7940x{
    {14, {3.1, 2.7, 2.4}},
};

// Mean stall (us) per transition on the Gold 6130, by active-core count
// (index 0 = 1 core). Downward transitions stall noticeably longer than
// upward ones; Scalar -> AVX-512 passes through both intermediate steps.
constexpr double k_stall_l0_l1[16] = {
    18.3831, 18.3701, 18.7486, 18.9329, 17.7967, 17.7583, 17.1102, 17.8264,
    15.7571, 15.7666, 15.7953, 15.8192, 16.1483, 16.3903, 16.565, 16.3513};
constexpr double k_stall_l0_l2[16] = {
    27.8095, 28.0433, 26.9738, 26.7712, 22.7115, 22.9779, 22.8565, 24.2017,
    23.28, 23.299, 23.3228, 24.0869, 22.9453, 22.2663, 23.1522, 23.1068};
constexpr double k_stall_l1_l2[16] = {
    17.0681, 17.9898, 16.609, 17.199, 12.8568, 12.8128, 12.383, 12.6608,
    14.4816, 14.4785, 13.7233, 13.7987, 13.2402, 12.97, 13.1401, 14.3547};
constexpr double k_stall_l1_l0[16] = {
    9.12968, 9.89633, 9.19064, 9.27862, 9.16189, 9.20446, 9.16998, 10.5573,
    9.54123, 9.59297, 9.61289, 9.84082, 9.61627, 9.63797, 9.66503, 9.56553};
constexpr double k_stall_l2_l0[16] = {
    9.15986, 9.43172, 9.24175, 9.42288, 9.36885, 9.43908, 9.49606, 10.815,
    9.66177, 9.7525, 9.66297, 10.5623, 9.78831, 9.76628, 9.88321, 9.72921};
constexpr double k_stall_l2_l1[16] = {
    9.13772, 9.32953, 8.79505, 9.40442, 9.40862, 9.44813, 9.46255, 10.6957,
    9.80298, 9.81613, 9.88233, 10.2016, 9.55865, 9.59252, 9.65426, 9.68098};

std::vector<CostEntry> gold6130_entries() {
    struct Series {
        LicenseLevel from, to;
        const double* stalls;
    };
    const Series series[] = {
        {LicenseLevel::L0, LicenseLevel::L1, k_stall_l0_l1},
        {LicenseLevel::L0, LicenseLevel::L2, k_stall_l0_l2},
        {LicenseLevel::L1, LicenseLevel::L2, k_stall_l1_l2},
        {LicenseLevel::L1, LicenseLevel::L0, k_stall_l1_l0},
        {LicenseLevel::L2, LicenseLevel::L0, k_stall_l2_l0},
        {LicenseLevel::L2, LicenseLevel::L1, k_stall_l2_l1},
    };
    std::vector<CostEntry> out;
    out.reserve(6 * 16);
    for (const auto& s : series)
        for (int c = 1; c <= 16; ++c)
            out.push_back({s.from, s.to, c, s.stalls[c - 1]});
    return out;
}

double require_number(const nlohmann::json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(std::string(where) + ": missing numeric field \"" + key + "\"");
    return j[key].get<double>();
}

} // namespace

FrequencyTable::FrequencyTable(std::vector<FreqBucket> buckets) : buckets_(std::move(buckets)) {
    if (buckets_.empty())
        throw ConfigError("frequency table needs at least one bucket");
    int prev_max = 0;
    for (const auto& b : buckets_) {
        if (b.max_active_cores <= prev_max)
            throw ConfigError("frequency buckets must have strictly increasing max_cores");
        for (double f : b.freq_ghz)
            if (!(f > 0.0))
                throw ConfigError("frequencies must be positive");
        if (b.freq_ghz[0] < b.freq_ghz[1] || b.freq_ghz[1] < b.freq_ghz[2])
            throw ConfigError("within a bucket, higher license levels cannot run faster");
        prev_max = b.max_active_cores;
    }
    for (std::size_t i = 1; i < buckets_.size(); ++i)
        for (int l = 0; l < 3; ++l)
            if (buckets_[i].freq_ghz[l] > buckets_[i - 1].freq_ghz[l])
                throw ConfigError("frequency must not increase with the active-core count");
}

FrequencyTable FrequencyTable::preset(std::string_view name) {
    if (name == "gold6130") return FrequencyTable(k_gold6130);
    if (name == "i9-7940X") return FrequencyTable(k_i9_7940x);
    throw ConfigError("unknown frequency preset \"" + std::string(name) +
                      "\" (known: gold6130, i9-7940X)");
}

const std::vector<std::string>& FrequencyTable::preset_names() {
    static const std::vector<std::string> names{"gold6130", "i9-7940X"};
    return names;
}

FrequencyTable FrequencyTable::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("buckets") || !j["buckets"].is_array())
        throw ConfigError("frequency table: expected {\"buckets\": [...]}");
    std::vector<FreqBucket> buckets;
    for (const auto& bj : j["buckets"]) {
        FreqBucket b;
        b.max_active_cores = static_cast<int>(require_number(bj, "max_cores", "frequency bucket"));
        b.freq_ghz[0] = require_number(bj, "l0", "frequency bucket");
        b.freq_ghz[1] = require_number(bj, "l1", "frequency bucket");
        b.freq_ghz[2] = require_number(bj, "l2", "frequency bucket");
        buckets.push_back(b);
    }
    return FrequencyTable(std::move(buckets));
}

nlohmann::json FrequencyTable::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : buckets_)
        arr.push_back({{"max_cores", b.max_active_cores},
                       {"l0", b.freq_ghz[0]},
                       {"l1", b.freq_ghz[1]},
                       {"l2", b.freq_ghz[2]}});
    return {{"buckets", arr}};
}

double FrequencyTable::freq_ghz(int active_cores, LicenseLevel level) const {
    if (active_cores < 1)
        throw ConfigError("active core count must be at least 1");
    for (const auto& b : buckets_)
        if (active_cores <= b.max_active_cores)
            return b.freq_ghz[level_index(level)];
    throw ConfigError("no frequency bucket covers " + std::to_string(active_cores) +
                      " active cores (table ends at " + std::to_string(max_cores()) + ")");
}

TransitionCostTable TransitionCostTable::flat(double stall_us) {
    if (!(stall_us >= 0.0))
        throw ConfigError("flat transition cost must be non-negative");
    TransitionCostTable t;
    t.flat_ = stall_us;
    return t;
}

TransitionCostTable TransitionCostTable::from_entries(std::vector<CostEntry> entries) {
    TransitionCostTable t;
    for (const auto& e : entries) {
        if (e.from == e.to)
            throw ConfigError("transition cost entries must change the level (" +
                              pair_name(e.from, e.to) + ")");
        if (e.active_cores < 1)
            throw ConfigError("transition cost entry needs active_cores >= 1");
        if (!(e.stall_us >= 0.0))
            throw ConfigError("transition stalls must be non-negative");
        for (const auto& other : t.entries_)
            if (other.from == e.from && other.to == e.to && other.active_cores == e.active_cores)
                throw ConfigError("duplicate cost entry for " + pair_name(e.from, e.to) + " at " +
                                  std::to_string(e.active_cores) + " cores");
        t.entries_.push_back(e);
    }
    return t;
}

TransitionCostTable TransitionCostTable::preset(std::string_view name) {
    if (name == "gold6130-measured") return from_entries(gold6130_entries());
    if (name == "flat16") return flat(16.0);
    if (name.rfind("flat:", 0) == 0) {
        double v = 0.0;
        auto num = name.substr(5);
        auto res = std::from_chars(num.data(), num.data() + num.size(), v);
        if (res.ec != std::errc() || res.ptr != num.data() + num.size())
            throw ConfigError("bad flat cost spec \"" + std::string(name) + "\"");
        return flat(v);
    }
    throw ConfigError("unknown cost preset \"" + std::string(name) +
                      "\" (known: gold6130-measured, flat16, flat:<us>)");
}

const std::vector<std::string>& TransitionCostTable::preset_names() {
    static const std::vector<std::string> names{"gold6130-measured", "flat16"};
    return names;
}

TransitionCostTable TransitionCostTable::from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ConfigError("cost table: expected an object");
    if (j.contains("flat_us") && j.contains("entries"))
        throw ConfigError("cost table: give either flat_us or entries, not both");
    if (j.contains("flat_us")) {
        if (!j["flat_us"].is_number())
            throw ConfigError("cost table: flat_us must be a number");
        return flat(j["flat_us"].get<double>());
    }
    if (j.contains("entries")) {
        if (!j["entries"].is_array())
            throw ConfigError("cost table: entries must be an array");
        std::vector<CostEntry> entries;
        for (const auto& ej : j["entries"]) {
            CostEntry e;
            e.from = level_from_int(static_cast<int>(require_number(ej, "from", "cost entry")));
            e.to = level_from_int(static_cast<int>(require_number(ej, "to", "cost entry")));
            e.active_cores = static_cast<int>(require_number(ej, "cores", "cost entry"));
            e.stall_us = require_number(ej, "stall_us", "cost entry");
            entries.push_back(e);
        }
        return from_entries(std::move(entries));
    }
    throw ConfigError("cost table: expected {\"flat_us\": ...} or {\"entries\": [...]}");
}

nlohmann::json TransitionCostTable::to_json() const {
    if (flat_)
        return {{"flat_us", *flat_}};
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries_)
        arr.push_back({{"from", level_index(e.from)},
                       {"to", level_index(e.to)},
                       {"cores", e.active_cores},
                       {"stall_us", e.stall_us}});
    return {{"entries", arr}};
}

double TransitionCostTable::cost_us(LicenseLevel from, LicenseLevel to, int active_cores) const {
    if (from == to)
        return 0.0;
    if (flat_)
        return *flat_;
    for (const auto& e : entries_)
        if (e.from == from && e.to == to && e.active_cores == active_cores)
            return e.stall_us;
    throw ConfigError("no transition cost for " + pair_name(from, to) + " at " +
                      std::to_string(active_cores) + " cores");
}

double dilate(double dur_ref_us, double f_ref_ghz, double f_actual_ghz) {
    if (!(f_ref_ghz > 0.0) || !(f_actual_ghz > 0.0))
        throw DomainError("dilate: frequencies must be positive");
    if (dur_ref_us < 0.0)
        throw DomainError("dilate: negative duration");
    return dur_ref_us * f_ref_ghz / f_actual_ghz;
}

double break_even_time(double f_high_ghz, double f_low_ghz, double total_overhead_us) {
    if (!(f_low_ghz > 0.0))
        throw DomainError("break_even_time: frequencies must be positive");
    if (f_high_ghz <= f_low_ghz)
        throw DomainError("break_even_time: no frequency headroom (f_high <= f_low)");
    if (total_overhead_us < 0.0)
        throw DomainError("break_even_time: negative overhead");
    return f_high_ghz * total_overhead_us / (f_high_ghz - f_low_ghz);
}

std::vector<BreakEvenEntry> break_even_table(const FrequencyTable& freq,
                                             const TransitionCostTable& costs,
                                             int cores_lo, int cores_hi) {
    if (cores_lo < 1 || cores_hi < cores_lo)
        throw ConfigError("break_even_table: bad core range");
    if (cores_hi > freq.max_cores())
        throw ConfigError("break_even_table: core range exceeds the frequency table");
    std::vector<BreakEvenEntry> out;
    for (auto [from, to] : downward_pairs()) {
        for (int c = cores_lo; c <= cores_hi; ++c) {
            BreakEvenEntry e;
            e.from = from;
            e.to = to;
            e.active_cores = c;
            double down = costs.cost_us(to, from, c);
            double up = costs.cost_us(from, to, c);
            e.t_total_overhead_us = down + up;
            double f_high = freq.freq_ghz(c, to);
            double f_low = freq.freq_ghz(c, from);
            e.t_be_us = break_even_time(f_high, f_low, e.t_total_overhead_us);
            e.gap_threshold_us = e.t_be_us - e.t_total_overhead_us;
            out.push_back(e);
        }
    }
    return out;
}

BreakEvenTable::BreakEvenTable(const FrequencyTable& freq, const TransitionCostTable& costs,
                               int cores_lo, int cores_hi)
    : entries_(break_even_table(freq, costs, cores_lo, cores_hi)) {}

const BreakEvenEntry& BreakEvenTable::lookup(LicenseLevel from, LicenseLevel to,
                                             int active_cores) const {
    for (const auto& e : entries_)
        if (e.from == from && e.to == to && e.active_cores == active_cores)
            return e;
    throw ConfigError("no break-even entry for " + pair_name(from, to) + " at " +
                      std::to_string(active_cores) + " cores");
}

nlohmann::json to_json(const BreakEvenEntry& e) {
    return {{"from", level_index(e.from)},
            {"to", level_index(e.to)},
            {"cores", e.active_cores},
            {"t_overhead_us", e.t_total_overhead_us},
            {"t_be_us", e.t_be_us},
            {"gap_threshold_us", e.gap_threshold_us}};
}

} // namespace avxfreq
