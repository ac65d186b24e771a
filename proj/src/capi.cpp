#include "slwin/slwin.h"

#include <cstring>
#include <new>
#include <string>

#include "core/bench.hpp"
#include "core/language.hpp"
#include "core/oracle.hpp"

using namespace slwin;

struct slwin_language {
    LanguageSpec spec;
};

struct slwin_window {
    std::unique_ptr<Window> win;
};

namespace {

thread_local std::string g_last_error;

slwin_status fail(slwin_status s, const char* what) {
    g_last_error = what;
    return s;
}

slwin_status run_guarded(auto&& fn) {
    try {
        fn();
        return SLWIN_OK;
    } catch (const ParseError& e) {
        return fail(SLWIN_ERR_PARSE, e.what());
    } catch (const InputError& e) {
        return fail(SLWIN_ERR_INPUT, e.what());
    } catch (const StateError& e) {
        return fail(SLWIN_ERR_STATE, e.what());
    } catch (const ResourceError& e) {
        return fail(SLWIN_ERR_RESOURCE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SLWIN_ERR_NOMEM, "out of memory");
    } catch (const std::exception& e) {
        return fail(SLWIN_ERR_INTERNAL, e.what());
    }
}

Model to_model(slwin_model m) {
    switch (m) {
    case SLWIN_MODEL_1F: return Model::OneFixed;
    case SLWIN_MODEL_1V: return Model::OneVar;
    case SLWIN_MODEL_2F: return Model::TwoFixed;
    default: return Model::TwoVar;
    }
}

WinOp to_op(slwin_op op) {
    switch (op) {
    case SLWIN_OP_RIGHTPUSH: return WinOp::RightPush;
    case SLWIN_OP_LEFTPUSH: return WinOp::LeftPush;
    case SLWIN_OP_LEFTPOP: return WinOp::LeftPop;
    default: return WinOp::RightPop;
    }
}

void fill_cost(slwin_cost* out, const CostCounters& cc, std::uint64_t work) {
    out->monoid_compositions = cc.monoid_compositions;
    out->entry_copies = cc.entry_copies;
    out->node_constructions = cc.node_constructions;
    out->table_entries_written = cc.table_entries_written;
    out->bit_writes = cc.bit_writes;
    out->deque_ops = cc.deque_ops;
    out->effect_applications = cc.effect_applications;
    out->work_units = work;
}

} // namespace

extern "C" {

void slwin_version(int* major, int* minor, int* patch) {
    if (major) *major = 1;
    if (minor) *minor = 0;
    if (patch) *patch = 0;
}

const char* slwin_last_error(void) { return g_last_error.c_str(); }

slwin_status slwin_language_load(const char* path, slwin_language** out) {
    if (!path || !out) return fail(SLWIN_ERR_INPUT, "null argument");
    *out = nullptr;
    return run_guarded([&] {
        auto* lang = new slwin_language{load_language(path)};
        *out = lang;
    });
}

slwin_status slwin_language_parse(const char* text, const char* base_dir,
                                  slwin_language** out) {
    if (!text || !out) return fail(SLWIN_ERR_INPUT, "null argument");
    *out = nullptr;
    return run_guarded([&] {
        auto* lang = new slwin_language{parse_language(text, base_dir ? base_dir : ".")};
        *out = lang;
    });
}

void slwin_language_free(slwin_language* lang) { delete lang; }

const char* slwin_language_class(const slwin_language* lang) {
    return lang ? lang_class_name(lang->spec.cls) : "?";
}

int slwin_language_alphabet_size(const slwin_language* lang) {
    return lang ? static_cast<int>(lang->spec.alphabet.size()) : 0;
}

const char* slwin_language_symbol_name(const slwin_language* lang, int code) {
    if (!lang || code < 0 || code >= static_cast<int>(lang->spec.alphabet.size()))
        return nullptr;
    return lang->spec.alphabet[static_cast<std::size_t>(code)].c_str();
}

int slwin_language_symbol_code(const slwin_language* lang, const char* name) {
    if (!lang || !name) return -1;
    return lang->spec.symbol_code(name);
}

int slwin_language_two_way(const slwin_language* lang) {
    return lang && lang->spec.two_way_capable() ? 1 : 0;
}

slwin_status slwin_language_accepts(const slwin_language* lang, const uint32_t* word,
                                    size_t length, int* result) {
    if (!lang || !result || (length > 0 && !word))
        return fail(SLWIN_ERR_INPUT, "null argument");
    return run_guarded([&] {
        *result = reference_accepts(lang->spec, {word, length}) ? 1 : 0;
    });
}

slwin_status slwin_window_open(const slwin_language* lang, slwin_model model,
                               size_t window_size, slwin_window** out) {
    if (!lang || !out) return fail(SLWIN_ERR_INPUT, "null argument");
    *out = nullptr;
    return run_guarded([&] {
        auto* w = new slwin_window{open_window(lang->spec, to_model(model), window_size)};
        *out = w;
    });
}

void slwin_window_free(slwin_window* win) { delete win; }

slwin_status slwin_window_apply(slwin_window* win, slwin_op op, uint32_t symbol) {
    if (!win) return fail(SLWIN_ERR_INPUT, "null window");
    return run_guarded([&] { win->win->apply(to_op(op), symbol); });
}

slwin_status slwin_window_query(slwin_window* win, int* result) {
    if (!win || !result) return fail(SLWIN_ERR_INPUT, "null argument");
    return run_guarded([&] { *result = win->win->query() ? 1 : 0; });
}

size_t slwin_window_length(const slwin_window* win) {
    return win ? win->win->length() : 0;
}

void slwin_window_costs(const slwin_window* win, slwin_cost* totals,
                        slwin_cost* per_op_max) {
    if (!win) return;
    if (totals) fill_cost(totals, win->win->totals(), 0);
    if (per_op_max) fill_cost(per_op_max, win->win->op_maxima(), win->win->max_work_units());
}

void slwin_window_reset_maxima(slwin_window* win) {
    if (win) win->win->reset_maxima();
}

slwin_status slwin_check_equivalence(const slwin_language* lang, slwin_model model,
                                     uint64_t seed, uint32_t streams, uint32_t length,
                                     size_t window_size, int threads,
                                     slwin_check_report* report) {
    if (!lang || !report) return fail(SLWIN_ERR_INPUT, "null argument");
    std::memset(report, 0, sizeof(*report));
    report->first_divergence_stream = -1;
    report->first_divergence_op = -1;
    return run_guarded([&] {
        CheckReport rep = check_equivalence(lang->spec, to_model(model), seed, streams,
                                            length, window_size, threads);
        report->streams_run = rep.streams_run;
        report->streams_passed = rep.streams_passed;
        report->first_divergence_stream = rep.first_divergence_stream;
        report->first_divergence_op = rep.first_divergence_op;
        std::snprintf(report->detail, sizeof(report->detail), "%s", rep.detail.c_str());
    });
}

slwin_status slwin_bench(const slwin_language* lang, size_t target_size, uint64_t seed,
                         slwin_bench_result* result) {
    if (!lang || !result) return fail(SLWIN_ERR_INPUT, "null argument");
    std::memset(result, 0, sizeof(*result));
    return run_guarded([&] {
        BenchResult r = bench_run(lang->spec, target_size, seed);
        fill_cost(&result->per_op_max, r.op_maxima, r.max_work_units);
        result->ops_executed = r.ops;
        result->peak_window = r.max_size;
        result->peak_live_nodes = r.peak_live_nodes;
        result->peak_table_entries = r.peak_table_entries;
    });
}

} // extern "C"
