#include "core/regular_window.hpp"

namespace slwin {

RegularWindow::RegularWindow(Dfa dfa) : dfa_(std::move(dfa)) {
    dfa_.validate();
    for (std::uint32_t a = 0; a < dfa_.alphabet.size(); ++a)
        letters_.push_back(transform_of_letter(dfa_, a));
    LetterOps ops{&letters_, dfa_.state_count, &cc_};
    deque_ = std::make_unique<ResizingDeque<LetterOps>>(ops);
    scratch_.resize(dfa_.state_count);
}

RegularWindow::RegularWindow(Dfa dfa, std::size_t fixed_capacity) : dfa_(std::move(dfa)) {
    dfa_.validate();
    for (std::uint32_t a = 0; a < dfa_.alphabet.size(); ++a)
        letters_.push_back(transform_of_letter(dfa_, a));
    LetterOps ops{&letters_, dfa_.state_count, &cc_};
    deque_ = std::make_unique<ResizingDeque<LetterOps>>(ops, fixed_capacity);
    scratch_.resize(dfa_.state_count);
}

void RegularWindow::check_symbol(std::uint32_t symbol) const {
    if (symbol >= letters_.size())
        throw InputError("regular window: unknown symbol code " + std::to_string(symbol));
}

void RegularWindow::do_apply(WinOp op, std::uint32_t symbol) {
    switch (op) {
    case WinOp::RightPush:
        check_symbol(symbol);
        deque_->push_right(symbol);
        break;
    case WinOp::LeftPush:
        check_symbol(symbol);
        deque_->push_left(symbol);
        break;
    case WinOp::LeftPop:
        deque_->pop_left();
        break;
    case WinOp::RightPop:
        deque_->pop_right();
        break;
    }
}

bool RegularWindow::do_query() {
    deque_->product_into(scratch_);
    return dfa_.is_final(scratch_[dfa_.initial]);
}

} // namespace slwin
