#include "avxfreq/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace avxfreq {

std::vector<SchedEvent> parse_sched_trace(const std::string& text) {
    std::istringstream in(text);
    std::vector<SchedEvent> events;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ParseError("not valid JSON", lineno);
        if (j.contains("meta"))
            continue; // descriptive only
        if (!j.contains("t_us") || !j["t_us"].is_number())
            throw ParseError("missing numeric \"t_us\"", lineno);
        if (!j.contains("pid") || !j["pid"].is_number_integer())
            throw ParseError("missing integer \"pid\"", lineno);
        if (!j.contains("license") || !j["license"].is_number_integer())
            throw ParseError("missing integer \"license\"", lineno);
        SchedEvent e;
        e.t_us = j["t_us"].get<double>();
        e.pid = j["pid"].get<std::int64_t>();
        try {
            e.license = level_from_int(j["license"].get<int>());
        } catch (const ConfigError& err) {
            throw ParseError(err.what(), lineno);
        }
        events.push_back(e);
    }
    if (events.empty())
        throw ParseError("empty scheduler trace");
    return events;
}

std::string emit_sched_trace(const std::vector<SchedEvent>& events,
                             const std::map<std::string, std::string>& meta) {
    std::string out;
    if (!meta.empty()) {
        nlohmann::json m;
        for (const auto& [k, v] : meta)
            m[k] = v;
        out += nlohmann::json{{"meta", m}}.dump();
        out += '\n';
    }
    for (const auto& e : events) {
        out += nlohmann::json{{"t_us", e.t_us}, {"pid", e.pid}, {"license", level_index(e.license)}}
                   .dump();
        out += '\n';
    }
    return out;
}

bool score_update_applies(double score, LicenseLevel license_now, LicenseLevel license_prev,
                          double dt_us, const ClassifierConfig& cfg) {
    if (dt_us < 0.0)
        throw ConfigError("update_score: negative burst length");
    double observed = static_cast<double>(level_index(license_now));
    bool settled = dt_us > cfg.long_burst_us;
    bool news = license_now != license_prev && observed != score;
    return settled || news;
}

double update_score(double score, LicenseLevel license_now, LicenseLevel license_prev,
                    double dt_us, const ClassifierConfig& cfg) {
    if (!score_update_applies(score, license_now, license_prev, dt_us, cfg))
        return score;
    double observed = static_cast<double>(level_index(license_now));
    return cfg.ema_weight * observed + (1.0 - cfg.ema_weight) * score;
}

ClassifyReport classify(const std::vector<SchedEvent>& events, const ClassifierConfig& cfg) {
    for (std::size_t i = 1; i < events.size(); ++i)
        if (events[i].t_us < events[i - 1].t_us)
            throw ConfigError("scheduler trace not time-ordered at event " + std::to_string(i));

    ClassifyReport rep;
    if (events.size() < 2)
        return rep; // no closed burst to learn from
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        const SchedEvent& in = events[i];
        const SchedEvent& next = events[i + 1];
        PidScore& ps = rep.per_pid[in.pid];
        double dt = next.t_us - in.t_us;
        if (score_update_applies(ps.final_score, next.license, in.license, dt, cfg)) {
            ps.final_score = update_score(ps.final_score, next.license, in.license, dt, cfg);
            ++ps.n_updates;
        }
        ps.timeline.emplace_back(next.t_us, ps.final_score);
    }
    return rep;
}

nlohmann::json ClassifyReport::to_json() const {
    nlohmann::json pids = nlohmann::json::object();
    for (const auto& [pid, ps] : per_pid) {
        nlohmann::json tl = nlohmann::json::array();
        for (const auto& [t, s] : ps.timeline)
            tl.push_back({t, s});
        pids[std::to_string(pid)] = {
            {"final_score", ps.final_score}, {"n_updates", ps.n_updates}, {"timeline", tl}};
    }
    return {{"processes", pids}};
}

std::string ClassifyReport::to_csv() const {
    std::string out = "pid,t_us,score\n";
    for (const auto& [pid, ps] : per_pid)
        for (const auto& [t, s] : ps.timeline)
            out += std::to_string(pid) + "," + nlohmann::json(t).dump() + "," +
                   nlohmann::json(s).dump() + "\n";
    return out;
}

LicenseLevel ProcSpec::ground_truth() const {
    LicenseLevel top = LicenseLevel::L0;
    for (const auto& seg : pattern)
        if (level_index(required_level(seg.cls)) > level_index(top))
            top = required_level(seg.cls);
    return top;
}

namespace {

// Hardware license state shared by all processes on the core: the level in
// force, and the last instant something was still demanding it.
struct LicenseState {
    LicenseLevel level = LicenseLevel::L0;
    double demanded_until_us = 0.0;
};

struct ProcCursor {
    std::size_t seg = 0;
    double rem_ref_us = 0.0;
};

} // namespace

SchedTrace synth_sched_trace(const std::vector<ProcSpec>& procs, double slice_us,
                             double horizon_us, const SimConfig& cfg,
                             double upclock_timeout_us, std::uint64_t seed) {
    cfg.validate();
    if (procs.empty())
        throw ConfigError("synth_sched_trace: need at least one process");
    if (!(slice_us > 0.0) || !(horizon_us > 0.0))
        throw ConfigError("synth_sched_trace: slice and horizon must be positive");
    if (!(upclock_timeout_us >= 0.0))
        throw ConfigError("synth_sched_trace: negative upclock timeout");
    for (const auto& p : procs) {
        if (p.pattern.empty())
            throw ConfigError("synth_sched_trace: process " + std::to_string(p.pid) +
                              " has an empty pattern");
        for (const auto& seg : p.pattern)
            if (!(seg.dur_ref_us > 0.0))
                throw ConfigError("synth_sched_trace: pattern durations must be positive");
        for (const auto& q : procs)
            if (&p != &q && p.pid == q.pid)
                throw ConfigError("synth_sched_trace: duplicate pid " + std::to_string(p.pid));
    }

    double f_ref = cfg.ref_freq_ghz();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.5, 2.5);

    LicenseState lic;
    std::vector<ProcCursor> cursors(procs.size());
    for (std::size_t i = 0; i < procs.size(); ++i)
        cursors[i].rem_ref_us = procs[i].pattern[0].dur_ref_us;

    // Run one process from now to slice_end, advancing the shared license.
    auto run_proc = [&](std::size_t pi, double now, double slice_end) {
        ProcCursor& cur = cursors[pi];
        const ProcSpec& proc = procs[pi];
        while (now < slice_end - 1e-12) {
            LicenseLevel demand = required_level(proc.pattern[cur.seg].cls);
            if (level_index(demand) > level_index(lic.level))
                lic.level = demand; // forced, immediate
            if (level_index(demand) < level_index(lic.level) &&
                lic.demanded_until_us + upclock_timeout_us <= now) {
                // Nothing has needed the held level for a full timeout.
                lic.level = demand;
            }
            double f_cur = cfg.freq.freq_ghz(cfg.active_cores, lic.level);
            double wall_needed = cur.rem_ref_us * f_ref / f_cur;
            double next = std::min(slice_end, now + wall_needed);
            if (level_index(demand) < level_index(lic.level)) {
                double fire = lic.demanded_until_us + upclock_timeout_us;
                if (fire < next)
                    next = fire;
            }
            double elapsed = next - now;
            cur.rem_ref_us -= elapsed * f_cur / f_ref;
            now = next;
            if (level_index(demand) >= level_index(lic.level))
                lic.demanded_until_us = now;
            if (cur.rem_ref_us <= 1e-9) {
                cur.seg = (cur.seg + 1) % proc.pattern.size();
                cur.rem_ref_us = proc.pattern[cur.seg].dur_ref_us;
            }
        }
    };

    SchedTrace out;
    out.events.push_back({0.0, procs[0].pid, lic.level});
    double t = 0.0;
    std::size_t current = 0;
    while (true) {
        double slice = slice_us * jitter(rng);
        bool last = t + slice >= horizon_us;
        double end = last ? horizon_us : t + slice;
        run_proc(current, t, end);
        t = end;
        std::size_t next = (current + 1) % procs.size();
        out.events.push_back({t, procs[next].pid, lic.level});
        if (last)
            break;
        current = next;
    }

    for (const auto& p : procs)
        out.ground_truth[p.pid] = p.ground_truth();

    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [pid, lvl] : out.ground_truth)
        labels[std::to_string(pid)] = level_index(lvl);
    out.meta = {
        {"generator", "sched-synth"},
        {"seed", std::to_string(seed)},
        {"slice_us", nlohmann::json(slice_us).dump()},
        {"horizon_us", nlohmann::json(horizon_us).dump()},
        {"upclock_timeout_us", nlohmann::json(upclock_timeout_us).dump()},
        {"labels", labels.dump()},
    };
    return out;
}

} // namespace avxfreq
