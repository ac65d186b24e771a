// slwin command line tool: run op streams against a sliding window, check a
// window structure against the naive reference, or benchmark per-operation
// cost. Built entirely on the public C interface of the library.
//
// Exit codes: 0 ok, 2 parse or validation error, 3 window-model violation,
// 4 check divergence.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slwin/slwin.h"

namespace {

constexpr int EXIT_PARSE = 2;
constexpr int EXIT_MODEL = 3;
constexpr int EXIT_DIVERGENCE = 4;

struct LangHandle {
    slwin_language* p = nullptr;
    ~LangHandle() { slwin_language_free(p); }
};
struct WinHandle {
    slwin_window* p = nullptr;
    ~WinHandle() { slwin_window_free(p); }
};

[[noreturn]] void die(int code, const std::string& msg) {
    std::cerr << "slwin: " << msg << "\n";
    std::exit(code);
}

slwin_model parse_model(const std::string& s) {
    if (s == "1F" || s == "1f") return SLWIN_MODEL_1F;
    if (s == "1V" || s == "1v") return SLWIN_MODEL_1V;
    if (s == "2F" || s == "2f") return SLWIN_MODEL_2F;
    if (s == "2V" || s == "2v") return SLWIN_MODEL_2V;
    die(EXIT_PARSE, "unknown model '" + s + "' (expected 1F, 1V, 2F or 2V)");
}

void load_checked(const std::string& cls, const std::string& path, LangHandle& lang) {
    slwin_status st = slwin_language_load(path.c_str(), &lang.p);
    if (st != SLWIN_OK) die(EXIT_PARSE, slwin_last_error());
    if (cls != slwin_language_class(lang.p))
        die(EXIT_PARSE, "language file is of class '" +
                            std::string(slwin_language_class(lang.p)) +
                            "', but '" + cls + "' was requested");
}

struct OpLine {
    enum Kind { Push, Pop, Query } kind = Query;
    bool left = false;
    std::string symbol;
    std::size_t line = 0;
};

std::vector<OpLine> parse_ops(std::istream& in) {
    std::vector<OpLine> ops;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::string head;
        if (!(ls >> head)) continue;
        OpLine op;
        op.line = no;
        std::string sym;
        if (head == "R" || head == "L") {
            if (!(ls >> sym))
                die(EXIT_PARSE, "line " + std::to_string(no) + ": " + head + " needs a symbol");
            op.kind = OpLine::Push;
            op.left = head == "L";
            op.symbol = sym;
        } else if (head == "PL" || head == "PR") {
            op.kind = OpLine::Pop;
            op.left = head == "PL";
        } else if (head == "Q") {
            op.kind = OpLine::Query;
        } else {
            die(EXIT_PARSE, "line " + std::to_string(no) + ": unknown op '" + head + "'");
        }
        std::string extra;
        if (ls >> extra)
            die(EXIT_PARSE, "line " + std::to_string(no) + ": trailing token '" + extra + "'");
        ops.push_back(op);
    }
    return ops;
}

// Model discipline: one-way streams may not push left or pop right; fixed
// streams must pair every push with an immediate pop on the opposite side
// and may not query or pop in between.
void enforce_model(const std::vector<OpLine>& ops, slwin_model model) {
    bool one_way = model == SLWIN_MODEL_1F || model == SLWIN_MODEL_1V;
    bool fixed = model == SLWIN_MODEL_1F || model == SLWIN_MODEL_2F;
    auto reject = [](const OpLine& op, const std::string& why) {
        die(EXIT_MODEL, "op " + std::to_string(op.line) + ": " + why);
    };
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const OpLine& op = ops[i];
        if (one_way) {
            if (op.kind == OpLine::Push && op.left) reject(op, "leftpush under a one-way model");
            if (op.kind == OpLine::Pop && !op.left) reject(op, "rightpop under a one-way model");
        }
        if (!fixed) continue;
        if (op.kind == OpLine::Push) {
            if (i + 1 >= ops.size())
                reject(op, "push without the paired pop in a fixed-size model");
            const OpLine& nxt = ops[i + 1];
            if (nxt.kind != OpLine::Pop || nxt.left == op.left)
                reject(op, "push must be followed immediately by the opposite-side pop");
            ++i; // consume the pair
        } else if (op.kind == OpLine::Pop) {
            reject(op, "unpaired pop in a fixed-size model");
        }
    }
}

int symbol_or_die(slwin_language* lang, const OpLine& op) {
    int code = slwin_language_symbol_code(lang, op.symbol.c_str());
    if (code < 0)
        die(EXIT_PARSE,
            "line " + std::to_string(op.line) + ": unknown symbol '" + op.symbol + "'");
    return code;
}

int cmd_run(const std::string& cls, const std::string& lang_path, const std::string& model_s,
            std::size_t window_size, const std::string& ops_path, bool strict_empty_pop) {
    LangHandle lang;
    load_checked(cls, lang_path, lang);
    slwin_model model = parse_model(model_s);

    std::vector<OpLine> ops;
    if (ops_path.empty() || ops_path == "-") {
        ops = parse_ops(std::cin);
    } else {
        std::ifstream in(ops_path);
        if (!in) die(EXIT_PARSE, "cannot open ops file '" + ops_path + "'");
        ops = parse_ops(in);
    }
    enforce_model(ops, model);

    WinHandle win;
    if (slwin_window_open(lang.p, model, window_size, &win.p) != SLWIN_OK)
        die(EXIT_PARSE, slwin_last_error());

    std::size_t queries = 0;
    for (const OpLine& op : ops) {
        switch (op.kind) {
        case OpLine::Query: {
            int r = 0;
            if (slwin_window_query(win.p, &r) != SLWIN_OK) die(EXIT_PARSE, slwin_last_error());
            std::cout << (r ? "1" : "0") << "\n";
            ++queries;
            break;
        }
        case OpLine::Push: {
            int code = symbol_or_die(lang.p, op);
            slwin_op o = op.left ? SLWIN_OP_LEFTPUSH : SLWIN_OP_RIGHTPUSH;
            if (slwin_window_apply(win.p, o, static_cast<std::uint32_t>(code)) != SLWIN_OK)
                die(EXIT_PARSE, slwin_last_error());
            break;
        }
        case OpLine::Pop: {
            if (slwin_window_length(win.p) == 0) {
                // a no-op under the window semantics; strict mode rejects it
                if (strict_empty_pop)
                    die(EXIT_MODEL,
                        "line " + std::to_string(op.line) + ": pop on an empty window");
                continue;
            }
            slwin_op o = op.left ? SLWIN_OP_LEFTPOP : SLWIN_OP_RIGHTPOP;
            if (slwin_window_apply(win.p, o, 0) != SLWIN_OK) die(EXIT_PARSE, slwin_last_error());
            break;
        }
        }
    }
    std::cerr << "RESULT run ok ops=" << ops.size() << " queries=" << queries
              << " final-length=" << slwin_window_length(win.p) << "\n";
    return 0;
}

int cmd_check(const std::string& cls, const std::string& lang_path, const std::string& model_s,
              std::size_t window_size, std::uint64_t seed, std::uint32_t streams,
              std::uint32_t length, int threads) {
    LangHandle lang;
    load_checked(cls, lang_path, lang);
    slwin_model model = parse_model(model_s);
    slwin_check_report rep;
    slwin_status st = slwin_check_equivalence(lang.p, model, seed, streams, length,
                                              window_size, threads, &rep);
    if (st != SLWIN_OK) die(EXIT_PARSE, slwin_last_error());
    if (rep.streams_passed == rep.streams_run) {
        std::cout << "PASS " << rep.streams_passed << "/" << rep.streams_run << "\n";
        return 0;
    }
    std::cout << "FAIL " << rep.streams_passed << "/" << rep.streams_run
              << " stream=" << rep.first_divergence_stream << " op=" << rep.first_divergence_op
              << " " << rep.detail << "\n";
    return EXIT_DIVERGENCE;
}

int cmd_bench(const std::string& cls, const std::string& lang_path, const std::string& sizes_s,
              std::uint64_t seed) {
    LangHandle lang;
    load_checked(cls, lang_path, lang);
    std::vector<std::size_t> sizes;
    std::istringstream ss(sizes_s);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        try {
            sizes.push_back(std::stoul(piece));
        } catch (...) {
            die(EXIT_PARSE, "bad size '" + piece + "'");
        }
    }
    if (sizes.empty()) die(EXIT_PARSE, "no sizes given");

    std::printf("%10s %10s %10s %10s %10s %10s %12s\n", "size", "max-comp", "max-copy",
                "max-node", "max-entry", "max-work", "peak-state");
    bool comps_equal = true;
    std::uint64_t first_comps = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        slwin_bench_result r;
        if (slwin_bench(lang.p, sizes[i], seed, &r) != SLWIN_OK)
            die(EXIT_PARSE, slwin_last_error());
        if (i == 0)
            first_comps = r.per_op_max.monoid_compositions;
        else if (r.per_op_max.monoid_compositions != first_comps)
            comps_equal = false;
        std::printf("%10zu %10llu %10llu %10llu %10llu %10llu %12llu\n", sizes[i],
                    (unsigned long long)r.per_op_max.monoid_compositions,
                    (unsigned long long)r.per_op_max.entry_copies,
                    (unsigned long long)r.per_op_max.node_constructions,
                    (unsigned long long)r.per_op_max.table_entries_written,
                    (unsigned long long)r.per_op_max.work_units,
                    (unsigned long long)(r.peak_table_entries ? r.peak_table_entries
                                                              : r.peak_live_nodes));
    }
    std::cout << "RESULT bench ok sizes=" << sizes.size()
              << " equal-max-compositions=" << (comps_equal ? "yes" : "no") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sliding-window language membership with instrumented latency"};
    app.require_subcommand(1);

    std::string cls, lang_path, model_s = "2V", ops_path, sizes_s;
    std::size_t window_size = 0;
    std::uint64_t seed = 1;
    std::uint32_t streams = 100, length = 2000;
    int threads = 0;
    bool strict_empty_pop = false;

    auto* run = app.add_subcommand("run", "apply an op stream, print one line per query");
    run->add_option("class", cls, "language class: dfa vpa doca len li combo")->required();
    run->add_option("language", lang_path, "language file")->required();
    run->add_option("model", model_s, "window model: 1F 1V 2F 2V")->required();
    run->add_option("-n,--size", window_size, "window size (fixed-size models)");
    run->add_option("--ops", ops_path, "op stream file, '-' or omit for stdin");
    run->add_flag("--strict-empty-pop", strict_empty_pop,
                  "treat pops on an empty window as errors instead of no-ops");

    auto* check = app.add_subcommand("check", "replay random streams against the reference");
    check->add_option("class", cls, "language class")->required();
    check->add_option("language", lang_path, "language file")->required();
    check->add_option("model", model_s, "window model")->required();
    check->add_option("--seed", seed, "stream seed");
    check->add_option("--streams", streams, "number of streams");
    check->add_option("--length", length, "operations per stream");
    check->add_option("-n,--size", window_size, "window size (fixed-size models)");
    check->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* bench = app.add_subcommand("bench", "adversarial per-op cost maxima per size");
    bench->add_option("class", cls, "language class")->required();
    bench->add_option("language", lang_path, "language file")->required();
    bench->add_option("--sizes", sizes_s, "comma-separated max window sizes")->required();
    bench->add_option("--seed", seed, "schedule seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : EXIT_PARSE;
    }

    if (run->parsed())
        return cmd_run(cls, lang_path, model_s, window_size, ops_path, strict_empty_pop);
    if (check->parsed())
        return cmd_check(cls, lang_path, model_s, window_size, seed, streams, length, threads);
    return cmd_bench(cls, lang_path, sizes_s, seed);
}
