/* slwin - sliding-window membership for regular, visibly pushdown and
 * deterministic one-counter languages, with worst-case per-operation cost
 * instrumentation.
 *
 * Opaque-handle C interface of the shared library. All functions returning
 * slwin_status report SLWIN_OK on success; on failure a thread-local
 * message is available through slwin_last_error(). Handles are single-owner
 * and not synchronized; distinct handles may be used from distinct threads.
 */
#ifndef SLWIN_H
#define SLWIN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct slwin_language slwin_language;
typedef struct slwin_window slwin_window;

typedef enum slwin_status {
    SLWIN_OK = 0,
    SLWIN_ERR_PARSE = 1,    /* malformed or invalid language file */
    SLWIN_ERR_INPUT = 2,    /* bad argument (unknown symbol, wrong class) */
    SLWIN_ERR_STATE = 3,    /* operation illegal in the current state */
    SLWIN_ERR_RESOURCE = 4, /* configured limit exceeded */
    SLWIN_ERR_NOMEM = 5,
    SLWIN_ERR_INTERNAL = 6
} slwin_status;

typedef enum slwin_model {
    SLWIN_MODEL_1F = 0, /* one-way, fixed size */
    SLWIN_MODEL_1V = 1, /* one-way, variable size */
    SLWIN_MODEL_2F = 2, /* two-way, fixed size */
    SLWIN_MODEL_2V = 3  /* two-way, variable size */
} slwin_model;

typedef enum slwin_op {
    SLWIN_OP_RIGHTPUSH = 0,
    SLWIN_OP_LEFTPUSH = 1,
    SLWIN_OP_LEFTPOP = 2,
    SLWIN_OP_RIGHTPOP = 3
} slwin_op;

typedef struct slwin_cost {
    uint64_t monoid_compositions;
    uint64_t entry_copies;
    uint64_t node_constructions;
    uint64_t table_entries_written;
    uint64_t bit_writes;
    uint64_t deque_ops;
    uint64_t effect_applications;
    uint64_t work_units; /* class-specific scalar; see the documentation */
} slwin_cost;

typedef struct slwin_check_report {
    uint32_t streams_run;
    uint32_t streams_passed;
    int64_t first_divergence_stream; /* -1 when everything matched */
    int64_t first_divergence_op;
    char detail[256];
} slwin_check_report;

typedef struct slwin_bench_result {
    slwin_cost per_op_max;
    uint64_t ops_executed;
    uint64_t peak_window;
    uint64_t peak_live_nodes;    /* tree-structured windows, else 0 */
    uint64_t peak_table_entries; /* counter windows, else 0 */
} slwin_bench_result;

void slwin_version(int* major, int* minor, int* patch);

/* Message describing the most recent failure on this thread. */
const char* slwin_last_error(void);

/* --- languages ------------------------------------------------------- */

slwin_status slwin_language_load(const char* path, slwin_language** out);
/* base_dir resolves relative component paths of combo languages. */
slwin_status slwin_language_parse(const char* text, const char* base_dir,
                                  slwin_language** out);
void slwin_language_free(slwin_language* lang);

/* One of "dfa", "vpa", "doca", "len", "li", "combo". */
const char* slwin_language_class(const slwin_language* lang);
int slwin_language_alphabet_size(const slwin_language* lang);
const char* slwin_language_symbol_name(const slwin_language* lang, int code);
/* -1 when the symbol is unknown. Length languages accept any token. */
int slwin_language_symbol_code(const slwin_language* lang, const char* name);
/* Nonzero when the language admits two-way window models. */
int slwin_language_two_way(const slwin_language* lang);

/* Reference acceptor: decides membership by direct simulation. */
slwin_status slwin_language_accepts(const slwin_language* lang, const uint32_t* word,
                                    size_t length, int* result);

/* --- windows ---------------------------------------------------------- */

/* window_size is required for the fixed-size models and ignored otherwise;
 * fixed windows start filled with window_size copies of symbol 0. */
slwin_status slwin_window_open(const slwin_language* lang, slwin_model model,
                               size_t window_size, slwin_window** out);
void slwin_window_free(slwin_window* win);

slwin_status slwin_window_apply(slwin_window* win, slwin_op op, uint32_t symbol);
/* result receives 0 or 1. Queries do not mutate the window. */
slwin_status slwin_window_query(slwin_window* win, int* result);
size_t slwin_window_length(const slwin_window* win);

void slwin_window_costs(const slwin_window* win, slwin_cost* totals,
                        slwin_cost* per_op_max);
void slwin_window_reset_maxima(slwin_window* win);

/* --- harnesses -------------------------------------------------------- */

/* Replays seeded model-valid random streams on the window structure and on
 * a naive reference, comparing every query. threads <= 0 picks a default. */
slwin_status slwin_check_equivalence(const slwin_language* lang, slwin_model model,
                                     uint64_t seed, uint32_t streams, uint32_t length,
                                     size_t window_size, int threads,
                                     slwin_check_report* report);

/* Deterministic adversarial cost benchmark up to the target window size. */
slwin_status slwin_bench(const slwin_language* lang, size_t target_size, uint64_t seed,
                         slwin_bench_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SLWIN_H */
