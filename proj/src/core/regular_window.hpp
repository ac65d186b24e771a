#pragma once

#include "core/automata.hpp"
#include "core/resizing_deque.hpp"
#include "core/window.hpp"

namespace slwin {

// Deque entries for a regular-language window carry only the symbol code;
// the letter transforms are computed once per automaton and shared.
struct LetterOps {
    using Payload = std::uint32_t;

    const std::vector<StateTransform>* letters = nullptr;
    std::size_t q = 0;
    CostCounters* cc = nullptr;

    std::size_t dim() const { return q; }
    CostCounters* counters() const { return cc; }
    void value_into(std::span<std::uint32_t> dst, const Payload& sym) const {
        auto src = (*letters)[sym].map();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
    }
};

// Sliding-window membership for an arbitrary regular language: the window
// symbols' transforms live in a two-way aggregation deque, a query applies
// the aggregate to the initial state.
class RegularWindow final : public Window {
public:
    explicit RegularWindow(Dfa dfa);
    RegularWindow(Dfa dfa, std::size_t fixed_capacity);

    std::size_t length() const override { return deque_->size(); }

    const ResizingDeque<LetterOps>& deque() const { return *deque_; }
    const Dfa& dfa() const { return dfa_; }

protected:
    void do_apply(WinOp op, std::uint32_t symbol) override;
    bool do_query() override;

private:
    void check_symbol(std::uint32_t symbol) const;

    Dfa dfa_;
    std::vector<StateTransform> letters_;
    std::unique_ptr<ResizingDeque<LetterOps>> deque_;
    std::vector<std::uint32_t> scratch_;
};

} // namespace slwin
