#include "avxfreq/avxfreq.h"

#include <cstring>
#include <string>

#include "avxfreq/classifier.hpp"
#include "avxfreq/model.hpp"
#include "avxfreq/policy.hpp"
#include "avxfreq/simengine.hpp"
#include "avxfreq/trace.hpp"

using namespace avxfreq;

struct avxfreq_freq_table {
    FrequencyTable t;
};
struct avxfreq_cost_table {
    TransitionCostTable t;
};
struct avxfreq_trace {
    WorkloadTrace t;
};
struct avxfreq_sim_config {
    SimConfig cfg;
};

namespace {

thread_local std::string g_last_error;

int fail(int status, const std::string& msg) {
    g_last_error = msg;
    return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return AVXFREQ_OK;
    } catch (const ParseError& e) {
        return fail(AVXFREQ_ERR_PARSE, e.what());
    } catch (const ContractError& e) {
        return fail(AVXFREQ_ERR_CONTRACT, e.what());
    } catch (const ConfigError& e) {
        return fail(AVXFREQ_ERR_CONFIG, e.what());
    } catch (const DomainError& e) {
        return fail(AVXFREQ_ERR_CONFIG, e.what());
    } catch (const std::exception& e) {
        return fail(AVXFREQ_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int require(bool ok, const char* what) {
    return ok ? AVXFREQ_OK : fail(AVXFREQ_ERR_INVALID_ARGUMENT, what);
}

bool looks_like_json(const char* spec) {
    while (*spec == ' ' || *spec == '\t' || *spec == '\n')
        ++spec;
    return *spec == '{';
}

std::vector<std::string> split_specs(const std::string& specs) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= specs.size()) {
        auto comma = specs.find(',', start);
        if (comma == std::string::npos)
            comma = specs.size();
        std::string item = specs.substr(start, comma - start);
        while (!item.empty() && item.front() == ' ')
            item.erase(item.begin());
        while (!item.empty() && item.back() == ' ')
            item.pop_back();
        if (!item.empty())
            out.push_back(item);
        start = comma + 1;
    }
    return out;
}

nlohmann::json parse_json_doc(const char* text, const char* what) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ParseError(std::string(what) + ": not valid JSON");
    return j;
}

std::vector<BreakEvenEntry> breakeven_entries(const avxfreq_freq_table* freq,
                                              const avxfreq_cost_table* costs, int lo, int hi) {
    return break_even_table(freq->t, costs->t, lo, hi);
}

ComparisonReport run_compare(const avxfreq_sim_config* cfg, const avxfreq_trace* trace,
                             const char* policy_specs, const char* baseline) {
    auto specs = split_specs(policy_specs);
    if (specs.empty())
        throw ConfigError("no policies given");
    std::vector<std::unique_ptr<Policy>> policies;
    std::vector<const Policy*> ptrs;
    for (const auto& s : specs) {
        policies.push_back(make_policy(s, cfg->cfg.freq, cfg->cfg.costs));
        ptrs.push_back(policies.back().get());
    }
    return compare_policies(trace->t, ptrs, cfg->cfg, baseline);
}

GapSweepResult run_compete(const avxfreq_sim_config* cfg, const char* policy_spec, int from_level,
                           int to_level, const double* gaps_us, size_t n_gaps) {
    auto policy = make_policy(policy_spec, cfg->cfg.freq, cfg->cfg.costs);
    std::vector<double> gaps(gaps_us, gaps_us + n_gaps);
    return competitive_sweep(*policy, level_from_int(from_level), level_from_int(to_level),
                             cfg->cfg, gaps);
}

} // namespace

extern "C" {

const char* avxfreq_version(void) { return "1.0.0"; }

const char* avxfreq_last_error(void) { return g_last_error.c_str(); }

const char* avxfreq_status_name(int status) {
    switch (status) {
    case AVXFREQ_OK: return "ok";
    case AVXFREQ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AVXFREQ_ERR_PARSE: return "parse error";
    case AVXFREQ_ERR_CONFIG: return "configuration error";
    case AVXFREQ_ERR_CONTRACT: return "contract violation";
    case AVXFREQ_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void avxfreq_string_free(char* s) { delete[] s; }

int avxfreq_freq_table_create(const char* spec, avxfreq_freq_table** out) {
    if (int rc = require(spec && out, "avxfreq_freq_table_create: null argument"))
        return rc;
    return guarded([&] {
        FrequencyTable t = looks_like_json(spec)
                               ? FrequencyTable::from_json(parse_json_doc(spec, "frequency table"))
                               : FrequencyTable::preset(spec);
        *out = new avxfreq_freq_table{std::move(t)};
    });
}

int avxfreq_freq_table_to_json(const avxfreq_freq_table* t, char** out_json) {
    if (int rc = require(t && out_json, "avxfreq_freq_table_to_json: null argument"))
        return rc;
    return guarded([&] { *out_json = dup_string(t->t.to_json().dump()); });
}

void avxfreq_freq_table_free(avxfreq_freq_table* t) { delete t; }

int avxfreq_cost_table_create(const char* spec, avxfreq_cost_table** out) {
    if (int rc = require(spec && out, "avxfreq_cost_table_create: null argument"))
        return rc;
    return guarded([&] {
        TransitionCostTable t =
            looks_like_json(spec) ? TransitionCostTable::from_json(parse_json_doc(spec, "cost table"))
                                  : TransitionCostTable::preset(spec);
        *out = new avxfreq_cost_table{std::move(t)};
    });
}

int avxfreq_cost_table_to_json(const avxfreq_cost_table* t, char** out_json) {
    if (int rc = require(t && out_json, "avxfreq_cost_table_to_json: null argument"))
        return rc;
    return guarded([&] { *out_json = dup_string(t->t.to_json().dump()); });
}

void avxfreq_cost_table_free(avxfreq_cost_table* t) { delete t; }

int avxfreq_sim_config_create(const avxfreq_freq_table* freq, const avxfreq_cost_table* costs,
                              int active_cores, int timeout_mode, avxfreq_sim_config** out) {
    if (int rc = require(freq && costs && out, "avxfreq_sim_config_create: null argument"))
        return rc;
    if (int rc = require(timeout_mode == 0 || timeout_mode == 1,
                         "avxfreq_sim_config_create: timeout_mode must be 0 or 1"))
        return rc;
    return guarded([&] {
        SimConfig cfg;
        cfg.freq = freq->t;
        cfg.costs = costs->t;
        cfg.active_cores = active_cores;
        cfg.timeout_mode = timeout_mode == 0 ? TimeoutMode::WallClock : TimeoutMode::TraceTime;
        cfg.validate();
        *out = new avxfreq_sim_config{std::move(cfg)};
    });
}

int avxfreq_sim_config_set_timeline(avxfreq_sim_config* cfg, int enabled) {
    if (int rc = require(cfg != nullptr, "avxfreq_sim_config_set_timeline: null config"))
        return rc;
    cfg->cfg.record_timeline = enabled != 0;
    return AVXFREQ_OK;
}

int avxfreq_sim_config_to_json(const avxfreq_sim_config* cfg, char** out_json) {
    if (int rc = require(cfg && out_json, "avxfreq_sim_config_to_json: null argument"))
        return rc;
    return guarded([&] { *out_json = dup_string(cfg->cfg.to_json().dump()); });
}

void avxfreq_sim_config_free(avxfreq_sim_config* cfg) { delete cfg; }

int avxfreq_trace_parse(const char* jsonl_text, avxfreq_trace** out) {
    if (int rc = require(jsonl_text && out, "avxfreq_trace_parse: null argument"))
        return rc;
    return guarded([&] { *out = new avxfreq_trace{WorkloadTrace::parse(std::string(jsonl_text))}; });
}

int avxfreq_trace_emit(const avxfreq_trace* t, char** out_jsonl) {
    if (int rc = require(t && out_jsonl, "avxfreq_trace_emit: null argument"))
        return rc;
    return guarded([&] { *out_jsonl = dup_string(t->t.emit()); });
}

size_t avxfreq_trace_segment_count(const avxfreq_trace* t) {
    return t ? t->t.segments().size() : 0;
}

int avxfreq_trace_stats_json(const avxfreq_trace* t, char** out_json) {
    if (int rc = require(t && out_json, "avxfreq_trace_stats_json: null argument"))
        return rc;
    return guarded([&] { *out_json = dup_string(trace_stats(t->t).to_json().dump()); });
}

void avxfreq_trace_free(avxfreq_trace* t) { delete t; }

int avxfreq_trace_gen_web(const char* config_json, avxfreq_trace** out) {
    if (int rc = require(out != nullptr, "avxfreq_trace_gen_web: null output"))
        return rc;
    return guarded([&] {
        nlohmann::json j = parse_json_doc(config_json ? config_json : "{}", "web trace config");
        WebTraceConfig cfg;
        if (j.contains("n_requests"))
            cfg.n_requests = j["n_requests"].get<int>();
        if (j.contains("seed"))
            cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("decrypt"))
            cfg.decrypt = Dist::parse(j["decrypt"].get<std::string>());
        if (j.contains("process"))
            cfg.process = Dist::parse(j["process"].get<std::string>());
        if (j.contains("encrypt"))
            cfg.encrypt = Dist::parse(j["encrypt"].get<std::string>());
        if (j.contains("gap"))
            cfg.gap = Dist::parse(j["gap"].get<std::string>());
        *out = new avxfreq_trace{gen_web_trace(cfg)};
    });
}

int avxfreq_break_even_time(double f_high_ghz, double f_low_ghz, double total_overhead_us,
                            double* out_us) {
    if (int rc = require(out_us != nullptr, "avxfreq_break_even_time: null output"))
        return rc;
    return guarded([&] { *out_us = break_even_time(f_high_ghz, f_low_ghz, total_overhead_us); });
}

int avxfreq_dilate(double dur_ref_us, double f_ref_ghz, double f_actual_ghz, double* out_us) {
    if (int rc = require(out_us != nullptr, "avxfreq_dilate: null output"))
        return rc;
    return guarded([&] { *out_us = dilate(dur_ref_us, f_ref_ghz, f_actual_ghz); });
}

int avxfreq_breakeven_json(const avxfreq_freq_table* freq, const avxfreq_cost_table* costs,
                           int cores_lo, int cores_hi, char** out_json) {
    if (int rc = require(freq && costs && out_json, "avxfreq_breakeven_json: null argument"))
        return rc;
    return guarded([&] {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : breakeven_entries(freq, costs, cores_lo, cores_hi))
            arr.push_back(to_json(e));
        *out_json = dup_string(nlohmann::json{{"entries", arr}}.dump());
    });
}

int avxfreq_breakeven_csv(const avxfreq_freq_table* freq, const avxfreq_cost_table* costs,
                          int cores_lo, int cores_hi, char** out_csv) {
    if (int rc = require(freq && costs && out_csv, "avxfreq_breakeven_csv: null argument"))
        return rc;
    return guarded([&] {
        std::string csv = "from,to,cores,t_overhead_us,t_be_us,gap_threshold_us\n";
        for (const auto& e : breakeven_entries(freq, costs, cores_lo, cores_hi)) {
            csv += std::to_string(level_index(e.from)) + "," + std::to_string(level_index(e.to)) +
                   "," + std::to_string(e.active_cores) + "," +
                   nlohmann::json(e.t_total_overhead_us).dump() + "," +
                   nlohmann::json(e.t_be_us).dump() + "," +
                   nlohmann::json(e.gap_threshold_us).dump() + "\n";
        }
        *out_csv = dup_string(csv);
    });
}

int avxfreq_simulate_json(const avxfreq_sim_config* cfg, const avxfreq_trace* trace,
                          const char* policy_spec, char** out_json) {
    if (int rc = require(cfg && trace && policy_spec && out_json,
                         "avxfreq_simulate_json: null argument"))
        return rc;
    return guarded([&] {
        auto policy = make_policy(policy_spec, cfg->cfg.freq, cfg->cfg.costs);
        *out_json = dup_string(simulate(trace->t, *policy, cfg->cfg).to_json().dump());
    });
}

int avxfreq_compare_json(const avxfreq_sim_config* cfg, const avxfreq_trace* trace,
                         const char* policy_specs, const char* baseline, char** out_json) {
    if (int rc = require(cfg && trace && policy_specs && baseline && out_json,
                         "avxfreq_compare_json: null argument"))
        return rc;
    return guarded([&] {
        *out_json = dup_string(run_compare(cfg, trace, policy_specs, baseline).to_json().dump());
    });
}

int avxfreq_compare_csv(const avxfreq_sim_config* cfg, const avxfreq_trace* trace,
                        const char* policy_specs, const char* baseline, char** out_csv) {
    if (int rc = require(cfg && trace && policy_specs && baseline && out_csv,
                         "avxfreq_compare_csv: null argument"))
        return rc;
    return guarded([&] {
        *out_csv = dup_string(run_compare(cfg, trace, policy_specs, baseline).to_csv());
    });
}

int avxfreq_single_gap_saving(const avxfreq_sim_config* cfg, double gap_ref_us, double timeout_us,
                              double* out_us) {
    if (int rc = require(cfg && out_us, "avxfreq_single_gap_saving: null argument"))
        return rc;
    return guarded([&] { *out_us = single_gap_saving(gap_ref_us, cfg->cfg, timeout_us); });
}

int avxfreq_compete_json(const avxfreq_sim_config* cfg, const char* policy_spec, int from_level,
                         int to_level, const double* gaps_us, size_t n_gaps, char** out_json) {
    if (int rc = require(cfg && policy_spec && gaps_us && out_json,
                         "avxfreq_compete_json: null argument"))
        return rc;
    if (int rc = require(from_level >= 0 && from_level <= 2 && to_level >= 0 && to_level <= 2,
                         "avxfreq_compete_json: license levels must be 0, 1 or 2"))
        return rc;
    return guarded([&] {
        *out_json = dup_string(
            run_compete(cfg, policy_spec, from_level, to_level, gaps_us, n_gaps).to_json().dump());
    });
}

int avxfreq_compete_csv(const avxfreq_sim_config* cfg, const char* policy_spec, int from_level,
                        int to_level, const double* gaps_us, size_t n_gaps, char** out_csv) {
    if (int rc = require(cfg && policy_spec && gaps_us && out_csv,
                         "avxfreq_compete_csv: null argument"))
        return rc;
    if (int rc = require(from_level >= 0 && from_level <= 2 && to_level >= 0 && to_level <= 2,
                         "avxfreq_compete_csv: license levels must be 0, 1 or 2"))
        return rc;
    return guarded([&] {
        GapSweepResult res = run_compete(cfg, policy_spec, from_level, to_level, gaps_us, n_gaps);
        std::string csv = "gap_us,ratio\n";
        for (std::size_t i = 0; i < res.gaps_us.size(); ++i)
            csv += nlohmann::json(res.gaps_us[i]).dump() + "," +
                   nlohmann::json(res.ratio[i]).dump() + "\n";
        *out_csv = dup_string(csv);
    });
}

int avxfreq_classify_json(const char* sched_jsonl, char** out_json) {
    if (int rc = require(sched_jsonl && out_json, "avxfreq_classify_json: null argument"))
        return rc;
    return guarded([&] {
        *out_json = dup_string(classify(parse_sched_trace(sched_jsonl)).to_json().dump());
    });
}

int avxfreq_classify_csv(const char* sched_jsonl, char** out_csv) {
    if (int rc = require(sched_jsonl && out_csv, "avxfreq_classify_csv: null argument"))
        return rc;
    return guarded([&] {
        *out_csv = dup_string(classify(parse_sched_trace(sched_jsonl)).to_csv());
    });
}

int avxfreq_gen_sched_trace(const char* procs_json, double slice_us, double horizon_us,
                            const avxfreq_sim_config* cfg, double upclock_timeout_us,
                            uint64_t seed, char** out_jsonl) {
    if (int rc = require(procs_json && cfg && out_jsonl, "avxfreq_gen_sched_trace: null argument"))
        return rc;
    return guarded([&] {
        nlohmann::json j = parse_json_doc(procs_json, "process specs");
        if (!j.is_array())
            throw ConfigError("process specs: expected a JSON array");
        std::vector<ProcSpec> procs;
        for (const auto& pj : j) {
            ProcSpec p;
            if (!pj.contains("pid") || !pj["pid"].is_number_integer())
                throw ConfigError("process spec: missing integer \"pid\"");
            p.pid = pj["pid"].get<std::int64_t>();
            if (!pj.contains("pattern") || !pj["pattern"].is_array())
                throw ConfigError("process spec: missing \"pattern\" array");
            for (const auto& sj : pj["pattern"]) {
                TraceSegment seg;
                if (!sj.contains("class") || !sj["class"].is_string())
                    throw ConfigError("pattern segment: missing \"class\"");
                try {
                    seg.cls = segment_class_from_string(sj["class"].get<std::string>());
                } catch (const ParseError& e) {
                    throw ConfigError(e.what());
                }
                if (!sj.contains("dur_us") || !sj["dur_us"].is_number())
                    throw ConfigError("pattern segment: missing numeric \"dur_us\"");
                seg.dur_ref_us = sj["dur_us"].get<double>();
                p.pattern.push_back(seg);
            }
            procs.push_back(std::move(p));
        }
        SchedTrace trace =
            synth_sched_trace(procs, slice_us, horizon_us, cfg->cfg, upclock_timeout_us, seed);
        *out_jsonl = dup_string(emit_sched_trace(trace.events, trace.meta));
    });
}

} // extern "C"
