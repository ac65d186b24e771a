#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/automata.hpp"
#include "core/counter_window.hpp"
#include "core/doca.hpp"
#include "core/vpa.hpp"
#include "core/window.hpp"

namespace slwin {

enum class LangClass : std::uint8_t { Dfa, Vpa, Doca, Len, LeftIdeal, Combo };

const char* lang_class_name(LangClass c);

// A parsed and validated language description of any supported class, plus
// the interned alphabet window operations use. Length languages accept any
// symbol token; their alphabet is the single placeholder "*".
struct LanguageSpec {
    LangClass cls = LangClass::Dfa;
    std::vector<std::string> alphabet;

    Dfa dfa;          // Dfa
    Vpa vpa;          // Vpa
    Doca doca;        // Doca
    LenSets len;      // Len
    Dfa li_reversal;  // LeftIdeal: automaton for the reversal language

    struct Formula {
        enum Kind : std::uint8_t { Leaf, And, Or, Not } kind = Leaf;
        std::size_t leaf = 0;
        std::unique_ptr<Formula> lhs, rhs;
    };
    std::unique_ptr<Formula> formula;                      // Combo
    std::vector<std::unique_ptr<LanguageSpec>> children;   // Combo components
    std::vector<std::string> child_paths;                  // as referenced in the file
    std::vector<std::vector<std::uint32_t>> child_symbol_maps;

    int symbol_code(const std::string& name) const;
    bool two_way_capable() const; // left ideals admit one-way operations only
};

// Line-oriented text formats, one per class; `#` starts a comment.
LanguageSpec parse_language(const std::string& text, const std::string& base_dir);
LanguageSpec load_language(const std::string& path);
std::string dump_language(const LanguageSpec& spec);
bool language_equal(const LanguageSpec& a, const LanguageSpec& b);

// Reference acceptor: decides membership of a word by direct simulation.
bool reference_accepts(const LanguageSpec& spec, std::span<const std::uint32_t> word);

// Builds the sliding window for the language under the given model. Fixed
// models prefill the window with window_size copies of symbol 0 and reset
// the per-op maxima afterwards.
std::unique_ptr<Window> open_window(const LanguageSpec& spec, Model model,
                                    std::size_t window_size);

} // namespace slwin
