// Command-line front end. All domain work happens behind the C API in
// libavxfreq; this file only parses arguments, moves bytes and renders
// reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avxfreq/avxfreq.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int EXIT_INPUT = 2;
constexpr int EXIT_CONTRACT = 3;

struct CliError {
    int code;
    std::string msg;
};

[[noreturn]] void fail_status(int status) {
    int code = (status == AVXFREQ_ERR_CONTRACT || status == AVXFREQ_ERR_INTERNAL) ? EXIT_CONTRACT
                                                                                  : EXIT_INPUT;
    throw CliError{code, std::string(avxfreq_status_name(status)) + ": " + avxfreq_last_error()};
}

void check(int status) {
    if (status != AVXFREQ_OK)
        fail_status(status);
}

// RAII over the C handles so error paths cannot leak.
template <typename T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    ~Handle() { Free(p); }
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    T** out() { return &p; }
    T* get() const { return p; }
};

using FreqHandle = Handle<avxfreq_freq_table, avxfreq_freq_table_free>;
using CostHandle = Handle<avxfreq_cost_table, avxfreq_cost_table_free>;
using TraceHandle = Handle<avxfreq_trace, avxfreq_trace_free>;
using ConfigHandle = Handle<avxfreq_sim_config, avxfreq_sim_config_free>;

struct Str {
    char* p = nullptr;
    ~Str() { avxfreq_string_free(p); }
    char** out() { return &p; }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CliError{EXIT_INPUT, "cannot open \"" + path + "\""};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A spec argument is either inline content or a path to a JSON file.
std::string table_spec(const std::string& arg) {
    if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json")
        return read_file(arg);
    return arg;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw CliError{EXIT_INPUT, "cannot write \"" + out_path + "\""};
    out << content;
}

// Options shared by the commands that run the simulator.
struct SimOptions {
    std::string freq = "i9-7940X";
    std::string costs = "flat16";
    int cores = 1;
    std::string mode = "wall";
    bool timeline = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--freq", freq, "frequency table preset or JSON file");
        cmd->add_option("--costs", costs, "transition cost preset or JSON file");
        cmd->add_option("--cores", cores, "active core count");
        cmd->add_option("--timeout-mode", mode, "timer clock: wall or trace")
            ->check(CLI::IsMember({"wall", "trace"}));
    }

    void build(FreqHandle& f, CostHandle& c, ConfigHandle& cfg) const {
        check(avxfreq_freq_table_create(table_spec(freq).c_str(), f.out()));
        check(avxfreq_cost_table_create(table_spec(costs).c_str(), c.out()));
        check(avxfreq_sim_config_create(f.get(), c.get(), cores, mode == "wall" ? 0 : 1,
                                        cfg.out()));
        if (timeline)
            check(avxfreq_sim_config_set_timeline(cfg.p, 1));
    }

    json config_json(const ConfigHandle& cfg) const {
        Str s;
        check(avxfreq_sim_config_to_json(cfg.get(), s.out()));
        return json::parse(s.str());
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

const char* level_name(int l) {
    static const char* names[3] = {"L0", "L1", "L2"};
    return (l >= 0 && l <= 2) ? names[l] : "?";
}

std::string render_sim_report(const json& r) {
    std::ostringstream os;
    os << "policy           " << r["policy"].get<std::string>() << "\n"
       << "total wall       " << fmt(r["total_wall_us"].get<double>()) << " us\n"
       << "trace reference  " << fmt(r["trace_total_ref_us"].get<double>()) << " us\n"
       << "residency        L0 " << fmt(r["residency_us"]["l0"].get<double>()) << "  L1 "
       << fmt(r["residency_us"]["l1"].get<double>()) << "  L2 "
       << fmt(r["residency_us"]["l2"].get<double>()) << " us\n"
       << "transitions      " << r["transition_count"].get<int>();
    if (!r["transitions"].empty()) {
        os << " (";
        bool first = true;
        for (auto& [k, v] : r["transitions"].items()) {
            if (!first)
                os << ", ";
            os << k << ": " << v.get<int>();
            first = false;
        }
        os << ")";
    }
    os << "\n"
       << "overhead         " << fmt(r["transition_overhead_us"].get<double>()) << " us\n"
       << "hints taken      " << r["hints_taken"].get<int>() << "\n";
    return os.str();
}

// --- command implementations ---

int cmd_breakeven(const std::string& freq, const std::string& costs, int cores_lo, int cores_hi,
                  bool as_json, bool as_csv, const std::string& out_path) {
    FreqHandle f;
    CostHandle c;
    check(avxfreq_freq_table_create(table_spec(freq).c_str(), f.out()));
    check(avxfreq_cost_table_create(table_spec(costs).c_str(), c.out()));

    Str fj, cj;
    check(avxfreq_freq_table_to_json(f.get(), fj.out()));
    check(avxfreq_cost_table_to_json(c.get(), cj.out()));
    json config{{"freq", json::parse(fj.str())},
                {"costs", json::parse(cj.str())},
                {"cores_lo", cores_lo},
                {"cores_hi", cores_hi}};

    if (as_csv) {
        Str csv;
        check(avxfreq_breakeven_csv(f.get(), c.get(), cores_lo, cores_hi, csv.out()));
        write_output(out_path, "# config " + config.dump() + "\n" + csv.str());
        return 0;
    }
    Str res;
    check(avxfreq_breakeven_json(f.get(), c.get(), cores_lo, cores_hi, res.out()));
    json entries = json::parse(res.str())["entries"];
    if (as_json) {
        write_output(out_path,
                     json{{"command", "breakeven"}, {"config", config}, {"entries", entries}}
                             .dump(2) +
                         "\n");
        return 0;
    }
    std::ostringstream os;
    os << "break-even times (freq=" << freq << ", costs=" << costs << ")\n\n";
    os << "pair     cores  overhead_us  t_be_us     gap_threshold_us\n";
    for (const auto& e : entries) {
        char line[128];
        std::snprintf(line, sizeof(line), "%s->%s   %-6d %-12.3f %-11.3f %.3f\n",
                      level_name(e["from"].get<int>()), level_name(e["to"].get<int>()),
                      e["cores"].get<int>(), e["t_overhead_us"].get<double>(),
                      e["t_be_us"].get<double>(), e["gap_threshold_us"].get<double>());
        os << line;
    }
    write_output(out_path, os.str());
    return 0;
}

int cmd_simulate(const SimOptions& opts, const std::string& trace_path, const std::string& policy,
                 bool as_json, const std::string& out_path) {
    FreqHandle f;
    CostHandle c;
    ConfigHandle cfg;
    opts.build(f, c, cfg);
    TraceHandle trace;
    check(avxfreq_trace_parse(read_file(trace_path).c_str(), trace.out()));
    Str res;
    check(avxfreq_simulate_json(cfg.get(), trace.get(), policy.c_str(), res.out()));
    json report = json::parse(res.str());
    if (as_json) {
        write_output(out_path, json{{"command", "simulate"},
                                    {"config", opts.config_json(cfg)},
                                    {"trace", trace_path},
                                    {"report", report}}
                                       .dump(2) +
                                   "\n");
        return 0;
    }
    write_output(out_path, render_sim_report(report));
    return 0;
}

int cmd_compare(const SimOptions& opts, const std::string& trace_path, const std::string& policies,
                std::string baseline, bool as_json, bool as_csv, const std::string& out_path) {
    FreqHandle f;
    CostHandle c;
    ConfigHandle cfg;
    opts.build(f, c, cfg);
    TraceHandle trace;
    check(avxfreq_trace_parse(read_file(trace_path).c_str(), trace.out()));
    if (baseline.empty()) {
        baseline = policies.substr(0, policies.find(','));
    }
    if (as_csv) {
        Str csv;
        check(avxfreq_compare_csv(cfg.get(), trace.get(), policies.c_str(), baseline.c_str(),
                                  csv.out()));
        write_output(out_path,
                     "# config " + opts.config_json(cfg).dump() + "\n" + csv.str());
        return 0;
    }
    Str res;
    check(avxfreq_compare_json(cfg.get(), trace.get(), policies.c_str(), baseline.c_str(),
                               res.out()));
    json rep = json::parse(res.str());
    if (as_json) {
        write_output(out_path, json{{"command", "compare"},
                                    {"config", opts.config_json(cfg)},
                                    {"trace", trace_path},
                                    {"baseline", rep["baseline"]},
                                    {"results", rep["results"]}}
                                       .dump(2) +
                                   "\n");
        return 0;
    }
    std::ostringstream os;
    os << "policy comparison (baseline " << rep["baseline"].get<std::string>() << ")\n\n";
    os << "policy            wall_us        speedup    transitions  overhead_us\n";
    for (const auto& r : rep["results"]) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-17s %-14.3f %+-10.4f %-12d %.3f\n",
                      r["policy"].get<std::string>().c_str(), r["total_wall_us"].get<double>(),
                      r["speedup"].get<double>(), r["transition_count"].get<int>(),
                      r["transition_overhead_us"].get<double>());
        os << line;
    }
    write_output(out_path, os.str());
    return 0;
}

int cmd_compete(const SimOptions& opts, const std::string& policy, const std::string& pair,
                const std::string& gaps_spec, bool as_json, bool as_csv,
                const std::string& out_path) {
    int from = 2, to = 0;
    if (std::sscanf(pair.c_str(), "%d:%d", &from, &to) != 2)
        throw CliError{EXIT_INPUT, "bad --pair \"" + pair + "\" (want from:to, e.g. 2:0)"};
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(gaps_spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0 ||
        start <= 0 || stop < start)
        throw CliError{EXIT_INPUT,
                       "bad --gaps \"" + gaps_spec + "\" (want start:stop:step, positive)"};
    std::vector<double> gaps;
    for (double g = start; g <= stop + 1e-9; g += step)
        gaps.push_back(g);

    FreqHandle f;
    CostHandle c;
    ConfigHandle cfg;
    opts.build(f, c, cfg);
    if (as_csv) {
        Str csv;
        check(avxfreq_compete_csv(cfg.get(), policy.c_str(), from, to, gaps.data(), gaps.size(),
                                  csv.out()));
        write_output(out_path,
                     "# config " + opts.config_json(cfg).dump() + "\n" + csv.str());
        return 0;
    }
    Str res;
    check(avxfreq_compete_json(cfg.get(), policy.c_str(), from, to, gaps.data(), gaps.size(),
                               res.out()));
    json rep = json::parse(res.str());
    if (as_json) {
        write_output(out_path, json{{"command", "compete"},
                                    {"config", opts.config_json(cfg)},
                                    {"sweep", rep}}
                                       .dump(2) +
                                   "\n");
        return 0;
    }
    std::ostringstream os;
    os << "competitive sweep: policy " << rep["policy"].get<std::string>() << ", pair "
       << level_name(from) << "->" << level_name(to) << ", " << gaps.size() << " gaps in ["
       << start << ", " << stop << "]\n";
    os << "max ratio " << rep["max_ratio"].get<double>() << "\n";
    write_output(out_path, os.str());
    return 0;
}

int cmd_gen_trace(int requests, std::uint64_t seed, const std::string& decrypt,
                  const std::string& process, const std::string& encrypt, const std::string& gap,
                  const std::string& out_path) {
    json cfg{{"n_requests", requests}, {"seed", seed}};
    if (!decrypt.empty())
        cfg["decrypt"] = decrypt;
    if (!process.empty())
        cfg["process"] = process;
    if (!encrypt.empty())
        cfg["encrypt"] = encrypt;
    if (!gap.empty())
        cfg["gap"] = gap;
    TraceHandle trace;
    check(avxfreq_trace_gen_web(cfg.dump().c_str(), trace.out()));
    Str text;
    check(avxfreq_trace_emit(trace.get(), text.out()));
    write_output(out_path, text.str());
    return 0;
}

int cmd_trace_stats(const std::string& trace_path, bool as_json, const std::string& out_path) {
    TraceHandle trace;
    check(avxfreq_trace_parse(read_file(trace_path).c_str(), trace.out()));
    Str res;
    check(avxfreq_trace_stats_json(trace.get(), res.out()));
    json st = json::parse(res.str());
    if (as_json) {
        write_output(out_path,
                     json{{"command", "trace-stats"}, {"trace", trace_path}, {"stats", st}}.dump(2) +
                         "\n");
        return 0;
    }
    std::ostringstream os;
    os << "trace " << trace_path << ": " << avxfreq_trace_segment_count(trace.get())
       << " segments, " << fmt(st["total_us"].get<double>()) << " us reference time\n";
    for (const char* cls : {"scalar", "avx2", "avx512"}) {
        const auto& c = st["classes"][cls];
        os << "  " << cls << ": " << c["segments"].get<int>() << " segments, "
           << fmt(c["total_us"].get<double>()) << " us\n";
    }
    const auto& gaps = st["gaps"];
    os << "  gaps: " << gaps["count"].get<int>();
    if (gaps.contains("mean_us"))
        os << ", mean " << fmt(gaps["mean_us"].get<double>()) << " us, p50 "
           << fmt(gaps["p50_us"].get<double>()) << ", p90 " << fmt(gaps["p90_us"].get<double>())
           << ", max " << fmt(gaps["max_us"].get<double>());
    os << "\n";
    write_output(out_path, os.str());
    return 0;
}

int cmd_classify(const std::string& input, bool as_json, bool as_csv,
                 const std::string& out_path) {
    std::string text = read_file(input);
    if (as_csv) {
        Str csv;
        check(avxfreq_classify_csv(text.c_str(), csv.out()));
        write_output(out_path, csv.str());
        return 0;
    }
    Str res;
    check(avxfreq_classify_json(text.c_str(), res.out()));
    json rep = json::parse(res.str());
    if (as_json) {
        write_output(out_path,
                     json{{"command", "classify"}, {"input", input}, {"processes", rep["processes"]}}
                             .dump(2) +
                         "\n");
        return 0;
    }
    std::ostringstream os;
    os << "pid     score   updates\n";
    for (auto& [pid, ps] : rep["processes"].items()) {
        char line[96];
        std::snprintf(line, sizeof(line), "%-7s %-7.3f %d\n", pid.c_str(),
                      ps["final_score"].get<double>(), ps["n_updates"].get<int>());
        os << line;
    }
    write_output(out_path, os.str());
    return 0;
}

// "avx512,scalar" or "avx512:50+scalar:500,scalar" -> process spec JSON.
json parse_procs_shorthand(const std::string& spec) {
    json procs = json::array();
    std::istringstream procs_in(spec);
    std::string proc;
    std::int64_t pid = 1;
    while (std::getline(procs_in, proc, ',')) {
        json pattern = json::array();
        std::istringstream segs_in(proc);
        std::string seg;
        while (std::getline(segs_in, seg, '+')) {
            auto colon = seg.find(':');
            std::string cls = seg.substr(0, colon);
            double dur = 100.0;
            if (colon != std::string::npos) {
                try {
                    dur = std::stod(seg.substr(colon + 1));
                } catch (const std::exception&) {
                    throw CliError{EXIT_INPUT, "bad --procs segment \"" + seg + "\""};
                }
            }
            pattern.push_back({{"class", cls}, {"dur_us", dur}});
        }
        if (pattern.empty())
            throw CliError{EXIT_INPUT, "bad --procs \"" + spec + "\""};
        procs.push_back({{"pid", pid++}, {"pattern", pattern}});
    }
    if (procs.empty())
        throw CliError{EXIT_INPUT, "bad --procs \"" + spec + "\""};
    return procs;
}

int cmd_gen_sched(const SimOptions& opts, const std::string& procs, const std::string& procs_json,
                  double slice, double horizon, double timeout, std::uint64_t seed,
                  const std::string& out_path) {
    json pj;
    if (!procs_json.empty())
        pj = json::parse(read_file(procs_json), nullptr, false);
    else
        pj = parse_procs_shorthand(procs);
    if (pj.is_discarded())
        throw CliError{EXIT_INPUT, "bad process spec file \"" + procs_json + "\""};
    FreqHandle f;
    CostHandle c;
    ConfigHandle cfg;
    opts.build(f, c, cfg);
    Str text;
    check(avxfreq_gen_sched_trace(pj.dump().c_str(), slice, horizon, cfg.get(), timeout, seed,
                                  text.out()));
    write_output(out_path, text.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AVX frequency-license transition simulator"};
    app.require_subcommand(1);

    // breakeven
    auto* be = app.add_subcommand("breakeven", "break-even times for every license pair");
    std::string be_freq = "gold6130", be_costs = "gold6130-measured", be_out;
    int be_lo = 1, be_hi = 0;
    bool be_json = false, be_csv = false;
    be->add_option("--freq", be_freq, "frequency table preset or JSON file");
    be->add_option("--costs", be_costs, "transition cost preset or JSON file");
    be->add_option("--cores-min", be_lo, "lowest active-core count");
    be->add_option("--cores-max", be_hi, "highest active-core count (default: table max)");
    be->add_flag("--json", be_json, "JSON output");
    be->add_flag("--csv", be_csv, "CSV output");
    be->add_option("-o,--output", be_out, "write to file instead of stdout");

    // simulate
    auto* sim = app.add_subcommand("simulate", "replay a trace under one policy");
    SimOptions sim_opts;
    std::string sim_trace, sim_policy, sim_out;
    bool sim_json = false;
    sim->add_option("--trace", sim_trace, "workload trace file")->required();
    sim->add_option("--policy", sim_policy, "policy spec")->required();
    sim_opts.attach(sim);
    sim->add_flag("--timeline", sim_opts.timeline, "record transition timeline");
    sim->add_flag("--json", sim_json, "JSON output");
    sim->add_option("-o,--output", sim_out, "write to file instead of stdout");

    // compare
    auto* cmp = app.add_subcommand("compare", "run several policies over one trace");
    SimOptions cmp_opts;
    std::string cmp_trace, cmp_policies, cmp_baseline, cmp_out;
    bool cmp_json = false, cmp_csv = false;
    cmp->add_option("--trace", cmp_trace, "workload trace file")->required();
    cmp->add_option("--policies", cmp_policies, "comma-separated policy specs")->required();
    cmp->add_option("--baseline", cmp_baseline, "baseline policy (default: first)");
    cmp_opts.attach(cmp);
    cmp->add_flag("--json", cmp_json, "JSON output");
    cmp->add_flag("--csv", cmp_csv, "CSV output");
    cmp->add_option("-o,--output", cmp_out, "write to file instead of stdout");

    // compete
    auto* cpt = app.add_subcommand("compete", "competitive ratio over single-gap traces");
    SimOptions cpt_opts;
    std::string cpt_policy, cpt_pair = "2:0", cpt_gaps = "1:5000:1", cpt_out;
    bool cpt_json = false, cpt_csv = false;
    cpt->add_option("--policy", cpt_policy, "policy spec")->required();
    cpt->add_option("--pair", cpt_pair, "license pair from:to");
    cpt->add_option("--gaps", cpt_gaps, "gap sweep start:stop:step (us)");
    cpt_opts.attach(cpt);
    cpt->add_flag("--json", cpt_json, "JSON output");
    cpt->add_flag("--csv", cpt_csv, "CSV output");
    cpt->add_option("-o,--output", cpt_out, "write to file instead of stdout");

    // gen-trace
    auto* gt = app.add_subcommand("gen-trace", "generate a synthetic web-server trace");
    int gt_requests = 1000;
    std::uint64_t gt_seed = 1;
    std::string gt_decrypt, gt_process, gt_encrypt, gt_gap, gt_out;
    gt->add_option("--requests", gt_requests, "number of requests");
    gt->add_option("--seed", gt_seed, "RNG seed");
    gt->add_option("--decrypt", gt_decrypt, "decrypt duration dist (default lognormal:20)");
    gt->add_option("--process", gt_process, "process duration dist (default lognormal:500)");
    gt->add_option("--encrypt", gt_encrypt, "encrypt duration dist (default lognormal:20)");
    gt->add_option("--gap", gt_gap, "inter-request gap dist (default exp:300)");
    gt->add_option("-o,--output", gt_out, "write to file instead of stdout");

    // trace-stats
    auto* ts = app.add_subcommand("trace-stats", "per-class totals and gap histogram");
    std::string ts_trace, ts_out;
    bool ts_json = false;
    ts->add_option("--trace", ts_trace, "workload trace file")->required();
    ts->add_flag("--json", ts_json, "JSON output");
    ts->add_option("-o,--output", ts_out, "write to file instead of stdout");

    // classify
    auto* cl = app.add_subcommand("classify", "power scores from a scheduler trace");
    std::string cl_input, cl_out;
    bool cl_json = false, cl_csv = false;
    cl->add_option("--input", cl_input, "scheduler trace file")->required();
    cl->add_flag("--json", cl_json, "JSON output");
    cl->add_flag("--csv", cl_csv, "CSV timeline output");
    cl->add_option("-o,--output", cl_out, "write to file instead of stdout");

    // gen-sched
    auto* gs = app.add_subcommand("gen-sched", "generate a scheduler trace from synthetic processes");
    SimOptions gs_opts;
    std::string gs_procs = "avx512,scalar", gs_procs_json, gs_out;
    double gs_slice = 500.0, gs_horizon = 200000.0, gs_timeout = 670.0;
    std::uint64_t gs_seed = 1;
    gs->add_option("--procs", gs_procs,
                   "process list, e.g. \"avx512,scalar\" or \"avx512:50+scalar:500,scalar\"");
    gs->add_option("--procs-json", gs_procs_json, "process spec JSON file (overrides --procs)");
    gs->add_option("--slice", gs_slice, "nominal scheduler slice (us)");
    gs->add_option("--horizon", gs_horizon, "trace length (us)");
    gs->add_option("--timeout", gs_timeout, "hardware upclock delay (us)");
    gs->add_option("--seed", gs_seed, "RNG seed");
    gs_opts.attach(gs);
    gs->add_option("-o,--output", gs_out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : EXIT_INPUT;
    }

    try {
        if (be->parsed()) {
            if (be_hi == 0) {
                FreqHandle f;
                check(avxfreq_freq_table_create(table_spec(be_freq).c_str(), f.out()));
                Str fj;
                check(avxfreq_freq_table_to_json(f.get(), fj.out()));
                json buckets = json::parse(fj.str())["buckets"];
                be_hi = buckets.back()["max_cores"].get<int>();
            }
            return cmd_breakeven(be_freq, be_costs, be_lo, be_hi, be_json, be_csv, be_out);
        }
        if (sim->parsed())
            return cmd_simulate(sim_opts, sim_trace, sim_policy, sim_json, sim_out);
        if (cmp->parsed())
            return cmd_compare(cmp_opts, cmp_trace, cmp_policies, cmp_baseline, cmp_json, cmp_csv,
                               cmp_out);
        if (cpt->parsed())
            return cmd_compete(cpt_opts, cpt_policy, cpt_pair, cpt_gaps, cpt_json, cpt_csv,
                               cpt_out);
        if (gt->parsed())
            return cmd_gen_trace(gt_requests, gt_seed, gt_decrypt, gt_process, gt_encrypt, gt_gap,
                                 gt_out);
        if (ts->parsed())
            return cmd_trace_stats(ts_trace, ts_json, ts_out);
        if (cl->parsed())
            return cmd_classify(cl_input, cl_json, cl_csv, cl_out);
        if (gs->parsed())
            return cmd_gen_sched(gs_opts, gs_procs, gs_procs_json, gs_slice, gs_horizon,
                                 gs_timeout, gs_seed, gs_out);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return e.code;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    }
    return 0;
}
