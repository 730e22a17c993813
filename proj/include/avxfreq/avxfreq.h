/* avxfreq: trace-driven simulation of AVX frequency-license transitions.
 *
 * Plain C surface over the C++ core. Objects are opaque handles created and
 * destroyed here; results come back as heap-allocated JSON or CSV strings
 * that the caller releases with avxfreq_string_free(). Every function that
 * can fail returns an avxfreq_status; on failure a thread-local message is
 * available from avxfreq_last_error().
 */
#ifndef AVXFREQ_H
#define AVXFREQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum avxfreq_status {
    AVXFREQ_OK = 0,
    AVXFREQ_ERR_INVALID_ARGUMENT = 1, /* null handle, bad enum value */
    AVXFREQ_ERR_PARSE = 2,            /* malformed input text */
    AVXFREQ_ERR_CONFIG = 3,           /* bad table data, unknown preset, bad spec */
    AVXFREQ_ERR_CONTRACT = 4,         /* a policy violated the engine contract */
    AVXFREQ_ERR_INTERNAL = 5
} avxfreq_status;

typedef struct avxfreq_freq_table avxfreq_freq_table;
typedef struct avxfreq_cost_table avxfreq_cost_table;
typedef struct avxfreq_trace avxfreq_trace;
typedef struct avxfreq_sim_config avxfreq_sim_config;

const char* avxfreq_version(void);

/* Message for the most recent failing call on this thread. Never NULL. */
const char* avxfreq_last_error(void);

const char* avxfreq_status_name(int status);

/* Release a string returned by any avxfreq_* function. NULL is fine. */
void avxfreq_string_free(char* s);

/* --- tables ------------------------------------------------------------
 * spec is a preset name or an inline JSON document (starts with '{').
 * Frequency presets: "gold6130", "i9-7940X".
 * Cost presets: "gold6130-measured", "flat16", "flat:<us>".
 * JSON forms:
 *   {"buckets": [{"max_cores": 2, "l0": 3.7, "l1": 3.6, "l2": 3.5}, ...]}
 *   {"flat_us": 16.0}
 *   {"entries": [{"from": 2, "to": 0, "cores": 1, "stall_us": 9.16}, ...]}
 */
int avxfreq_freq_table_create(const char* spec, avxfreq_freq_table** out);
int avxfreq_freq_table_to_json(const avxfreq_freq_table* t, char** out_json);
void avxfreq_freq_table_free(avxfreq_freq_table* t);

int avxfreq_cost_table_create(const char* spec, avxfreq_cost_table** out);
int avxfreq_cost_table_to_json(const avxfreq_cost_table* t, char** out_json);
void avxfreq_cost_table_free(avxfreq_cost_table* t);

/* --- simulation configuration ------------------------------------------
 * timeout_mode: 0 = timers measure wall time, 1 = timers measure trace
 * (reference) time. Tables are copied into the config.
 */
int avxfreq_sim_config_create(const avxfreq_freq_table* freq, const avxfreq_cost_table* costs,
                              int active_cores, int timeout_mode, avxfreq_sim_config** out);
int avxfreq_sim_config_set_timeline(avxfreq_sim_config* cfg, int enabled);
int avxfreq_sim_config_to_json(const avxfreq_sim_config* cfg, char** out_json);
void avxfreq_sim_config_free(avxfreq_sim_config* cfg);

/* --- traces -------------------------------------------------------------
 * Trace text is JSON lines: {"class": "scalar"|"avx2"|"avx512",
 * "dur_us": <positive>, "hint": <bool, optional>}, optionally preceded by
 * one {"meta": {...}} line.
 */
int avxfreq_trace_parse(const char* jsonl_text, avxfreq_trace** out);
int avxfreq_trace_emit(const avxfreq_trace* t, char** out_jsonl);
size_t avxfreq_trace_segment_count(const avxfreq_trace* t);
int avxfreq_trace_stats_json(const avxfreq_trace* t, char** out_json);
void avxfreq_trace_free(avxfreq_trace* t);

/* Synthetic web-server workload. config_json fields (all optional):
 *   n_requests (int), seed (int), decrypt/process/encrypt/gap
 *   (distribution specs like "lognormal:20", "lognormal:20:0.75",
 *   "fixed:5", "exp:300").
 * Passing NULL for config_json selects the stock workload: 1000 requests,
 * seed 1, lognormal:20 / lognormal:500 / lognormal:20 / exp:300.
 */
int avxfreq_trace_gen_web(const char* config_json, avxfreq_trace** out);

/* --- break-even analysis ------------------------------------------------ */
int avxfreq_break_even_time(double f_high_ghz, double f_low_ghz, double total_overhead_us,
                            double* out_us);
int avxfreq_dilate(double dur_ref_us, double f_ref_ghz, double f_actual_ghz, double* out_us);

/* Break-even table over every downward license pair for core counts in
 * [cores_lo, cores_hi]. JSON: {"entries": [...]}; CSV columns:
 * from,to,cores,t_overhead_us,t_be_us,gap_threshold_us.
 */
int avxfreq_breakeven_json(const avxfreq_freq_table* freq, const avxfreq_cost_table* costs,
                           int cores_lo, int cores_hi, char** out_json);
int avxfreq_breakeven_csv(const avxfreq_freq_table* freq, const avxfreq_cost_table* costs,
                          int cores_lo, int cores_hi, char** out_csv);

/* --- simulation ---------------------------------------------------------
 * Policy specs: "fixed:<us>", "breakeven", "hint:<fallback us>", "oracle",
 * "never", "immediate".
 */
int avxfreq_simulate_json(const avxfreq_sim_config* cfg, const avxfreq_trace* trace,
                          const char* policy_spec, char** out_json);

/* policy_specs is comma-separated; baseline must be one of them. */
int avxfreq_compare_json(const avxfreq_sim_config* cfg, const avxfreq_trace* trace,
                         const char* policy_specs, const char* baseline, char** out_json);
int avxfreq_compare_csv(const avxfreq_sim_config* cfg, const avxfreq_trace* trace,
                        const char* policy_specs, const char* baseline, char** out_csv);

/* Wall time lost on [avx512 100us][scalar gap] by waiting timeout_us before
 * upclocking instead of upclocking immediately.
 */
int avxfreq_single_gap_saving(const avxfreq_sim_config* cfg, double gap_ref_us,
                              double timeout_us, double* out_us);

/* Competitive ratio of a policy against the offline optimum on single-gap
 * traces, one gap per entry of gaps. from_level/to_level name a downward
 * license pair (e.g. 2 and 0). CSV columns: gap_us,ratio.
 */
int avxfreq_compete_json(const avxfreq_sim_config* cfg, const char* policy_spec, int from_level,
                         int to_level, const double* gaps_us, size_t n_gaps, char** out_json);
int avxfreq_compete_csv(const avxfreq_sim_config* cfg, const char* policy_spec, int from_level,
                        int to_level, const double* gaps_us, size_t n_gaps, char** out_csv);

/* --- per-process classification -----------------------------------------
 * Scheduler trace text is JSON lines {"t_us": ..., "pid": ..., "license":
 * 0|1|2}, optionally preceded by one {"meta": {...}} line.
 */
int avxfreq_classify_json(const char* sched_jsonl, char** out_json);
int avxfreq_classify_csv(const char* sched_jsonl, char** out_csv);

/* Generate a scheduler trace by round-robining synthetic processes on one
 * core. procs_json: [{"pid": 1, "pattern": [{"class": "avx512",
 * "dur_us": 100}, ...]}, ...]. Returns trace JSONL whose meta line carries
 * the per-pid ground-truth labels.
 */
int avxfreq_gen_sched_trace(const char* procs_json, double slice_us, double horizon_us,
                            const avxfreq_sim_config* cfg, double upclock_timeout_us,
                            uint64_t seed, char** out_jsonl);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AVXFREQ_H */
