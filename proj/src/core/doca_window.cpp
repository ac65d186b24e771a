#include "core/doca_window.hpp"

namespace slwin {

DocaWindow::DocaWindow(Doca doca)
    : doca_(std::move(doca)),
      budget_unit_(4ull * (doca_.state_count()) * (doca_.period_lcm + 1)) {
    doca_.validate();
}

DocaWindow::~DocaWindow() = default;

DocaWindow::Block* DocaWindow::new_block() {
    Block* b;
    if (!free_.empty()) {
        b = free_.back();
        free_.pop_back();
    } else {
        arena_.emplace_back();
        b = &arena_.back();
    }
    *b = Block{};
    ++cc_.node_constructions;
    return b;
}

void DocaWindow::recycle(Block* b) {
    table_entries_ -= b->eff.table_entries();
    b->eff = Effect{};
    free_.push_back(b);
}

void DocaWindow::push_side(bool right, std::uint32_t sym) {
    if (sym >= doca_.alphabet.size())
        throw InputError("doca window: unknown symbol code");
    ++now_;
    if (right)
        symbols_.push_back(sym);
    else
        symbols_.push_front(sym);

    auto level_at = [&](std::size_t off) {
        return right ? blocks_[blocks_.size() - 1 - off]->level : blocks_[off]->level;
    };

    std::size_t merged = 0; // blocks consumed by the binary-counter carry
    while (merged < blocks_.size() && level_at(merged) == merged) ++merged;

    Block* prev = new_block();
    prev->level = 0;
    prev->symbol = sym;
    prev->birth = now_;
    prev->side = right ? 1 : 0;
    prev->eff = Effect::of_letter(doca_, sym, &cc_);
    prev->completed = true;
    table_entries_ += prev->eff.table_entries();

    Chain chain;
    chain.side = right ? 1 : 0;
    for (std::size_t i = 0; i < merged; ++i) {
        Block* old = right ? blocks_[blocks_.size() - 1 - i] : blocks_[i];
        Block* node = new_block();
        node->level = static_cast<std::uint32_t>(i + 1);
        node->left = right ? old : prev;
        node->right = right ? prev : old;
        node->birth = now_;
        node->side = right ? 1 : 0;
        node->eff = Effect(doca_, 1u << node->level);
        table_entries_ += node->eff.table_entries();
        chain.members.push_back(node);
        prev = node;
    }
    for (std::size_t i = 0; i < merged; ++i) {
        if (right)
            blocks_.pop_back();
        else
            blocks_.pop_front();
    }
    if (right)
        blocks_.push_back(prev);
    else
        blocks_.push_front(prev);
    if (!chain.members.empty()) chains_.push_back(std::move(chain));
    advance();
}

void DocaWindow::pop_side(bool right) {
    ++now_;
    if (right) {
        symbols_.pop_back();
    } else {
        symbols_.pop_front();
    }
    Block* cur = right ? blocks_.back() : blocks_.front();
    if (right)
        blocks_.pop_back();
    else
        blocks_.pop_front();

    // dissolve the extremal root-leaf path; the hanging half-blocks are
    // already in the tree and become maximal, innermost (level 0) outermost
    std::vector<Block*> hangs;
    while (cur->level > 0) {
        Block* next = right ? cur->right : cur->left;
        Block* hang = right ? cur->left : cur->right;
        hangs.push_back(hang);
        cur->dead = true;
        graveyard_.push_back(cur);
        cur = next;
    }
    cur->dead = true; // the popped leaf
    graveyard_.push_back(cur);

    for (Block* h : hangs) {
        if (right)
            blocks_.push_back(h);
        else
            blocks_.push_front(h);
    }
    advance();
}

void DocaWindow::prune_chains() {
    std::size_t w = 0;
    for (std::size_t i = 0; i < chains_.size(); ++i) {
        Chain& c = chains_[i];
        std::size_t keep = 0;
        std::size_t next = 0;
        for (std::size_t k = 0; k < c.members.size(); ++k) {
            if (c.members[k]->dead) continue;
            if (k < c.next) ++next;
            c.members[keep++] = c.members[k];
        }
        c.members.resize(keep);
        c.next = next;
        while (c.next < c.members.size() && c.members[c.next]->completed) ++c.next;
        if (c.next < c.members.size()) {
            if (w != i) chains_[w] = std::move(chains_[i]);
            ++w;
        }
    }
    chains_.resize(w);
    for (Block* b : graveyard_) recycle(b);
    graveyard_.clear();
}

void DocaWindow::advance() {
    prune_chains();
    for (Chain& c : chains_) {
        std::size_t budget = budget_unit_;
        while (budget > 0 && c.next < c.members.size()) {
            Block* b = c.members[c.next];
            if (!b->left->completed || !b->right->completed) break; // stalled
            std::size_t written = b->eff.fill_step(doca_, b->left->eff, b->right->eff,
                                                   budget, &cc_);
            budget -= written;
            if (b->eff.complete()) {
                b->completed = true;
                ++c.next;
            } else {
                break;
            }
        }
    }
    // age bound: a level-a block must be complete 2^a - 1 updates after birth
    for (const Chain& c : chains_)
        for (std::size_t k = c.next; k < c.members.size(); ++k) {
            const Block* b = c.members[k];
            if (!b->completed && now_ - b->birth >= (1ull << b->level) - 1) overdue_ = true;
        }
    // at most two blocks per level may be mid-completion (one per end)
    std::uint8_t per_level[64] = {0};
    for (const Chain& c : chains_)
        for (std::size_t k = c.next; k < c.members.size(); ++k) {
            std::uint32_t lv = c.members[k]->level;
            if (lv < 64 && ++per_level[lv] > 2) chain_overflow_ = true;
        }
}

void DocaWindow::collect_completed(Block* b, std::vector<Block*>& out) {
    if (b->completed) {
        out.push_back(b);
        return;
    }
    // leaves are completed at birth, so an incomplete block always splits
    collect_completed(b->left, out);
    collect_completed(b->right, out);
}

std::size_t DocaWindow::factor_count() {
    factor_scratch_.clear();
    for (Block* b : blocks_) collect_completed(b, factor_scratch_);
    return factor_scratch_.size();
}

void DocaWindow::do_apply(WinOp op, std::uint32_t symbol) {
    switch (op) {
    case WinOp::RightPush: push_side(true, symbol); break;
    case WinOp::LeftPush: push_side(false, symbol); break;
    case WinOp::LeftPop:
        if (symbols_.empty()) throw StateError("doca window: pop on empty");
        pop_side(false);
        break;
    case WinOp::RightPop:
        if (symbols_.empty()) throw StateError("doca window: pop on empty");
        pop_side(true);
        break;
    }
}

bool DocaWindow::do_query() {
    factor_scratch_.clear();
    for (Block* b : blocks_) collect_completed(b, factor_scratch_);
    DocaConfig c{doca_.initial, 0};
    for (Block* f : factor_scratch_) c = f->eff.apply(doca_, c, &cc_);
    return doca_.finals[c.state] != 0;
}

bool DocaWindow::shape_ok() const {
    std::uint64_t total = 0;
    for (const Block* b : blocks_) total += 1ull << b->level;
    if (total != symbols_.size()) return false;
    if (blocks_.empty()) return true;
    // strictly ascending prefix, then strictly descending remainder; the two
    // may meet in a single equal pair
    std::size_t t = 0;
    while (t + 1 < blocks_.size() && blocks_[t + 1]->level > blocks_[t]->level) ++t;
    for (std::size_t i = t + 2; i < blocks_.size(); ++i)
        if (blocks_[i]->level >= blocks_[i - 1]->level) return false;
    return true;
}

bool DocaWindow::trees_ok() const {
    auto check = [&](const Block* b, auto&& self) -> bool {
        if (b->dead) return false;
        if (b->level == 0) return b->left == nullptr && b->right == nullptr;
        if (!b->left || !b->right) return false;
        if (b->left->level != b->level - 1 || b->right->level != b->level - 1) return false;
        return self(b->left, self) && self(b->right, self);
    };
    for (const Block* b : blocks_)
        if (!check(b, check)) return false;
    return true;
}

} // namespace slwin
